"""Reduction of rotationally covariant superoperators to per-rank coefficient
matrices, superoperator mode decompositions, measurement channels, and
reference-frame channel simulation.

A covariant map E is block diagonal in irreducible tensor operator bases:
E(T_m^(mu,alpha)) = sum_beta c^(mu)_{beta alpha} S_m^(mu,beta) with c independent
of m.  On Liouville matrices the group acts as L -> (U_out x conj(U_out)) L
(U_in x conj(U_in))^dag, so superoperator modes are ordinary rectangular
tensor-basis components in that action.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    Superoperator,
    _as_matrix,
    apply_superop,
    channel_from_kraus,
    compose_superops,
    hs_norm,
    partial_trace,
    superop_from_map,
    trace_norm,
    unvec,
    vec,
)
from .su2 import (
    DecomposedRep,
    SU2Representation,
    TensorOperatorBasis,
    _tensor_ops_between,
    _twice,
    decompose,
)


# ---------------------------------------------------------------------------
# superoperator-space tensor bases
# ---------------------------------------------------------------------------

def _liouville_rep(rep) -> DecomposedRep:
    """Decomposition of U x conj(U) acting on row-stacked operators."""
    dec = decompose(rep) if isinstance(rep, SU2Representation) else rep
    return dec.tensor(dec.conjugate())


_superop_basis_cache: dict = {}


def superop_tensor_basis(in_rep, out_rep, ranks=None) -> TensorOperatorBasis:
    """Covariant basis of the space of superoperators B(H_in) -> B(H_out),
    optionally restricted to the given twice-mu ranks."""
    key = None
    if isinstance(in_rep, SU2Representation) and isinstance(out_rep, SU2Representation):
        key = (in_rep, out_rep, None if ranks is None else tuple(sorted(ranks)))
        if key in _superop_basis_cache:
            return _superop_basis_cache[key]
    basis = _tensor_ops_between(_liouville_rep(out_rep), _liouville_rep(in_rep),
                                ranks=None if ranks is None else set(ranks))
    if key is not None:
        _superop_basis_cache[key] = basis
    return basis


def superop_twirl_basis(in_rep, out_rep) -> TensorOperatorBasis:
    return superop_tensor_basis(in_rep, out_rep, ranks={0})


def twirl_superop(e: Superoperator, in_rep, out_rep,
                  basis: TensorOperatorBasis | None = None) -> Superoperator:
    """Exact group average int dg U^out_g o e o U^in_{g^-1} (commutant projection)."""
    basis = basis or superop_twirl_basis(in_rep, out_rep)
    liou = np.zeros_like(e.liouville)
    for (tmu, tm, a), t in basis.ops.items():
        if tmu == 0:
            liou += t * np.vdot(t, e.liouville)
    return Superoperator(liou, e.in_dim, e.out_dim, trace_preserving=e.trace_preserving)


def superop_covariance_residual(e: Superoperator, in_rep, out_rep,
                                basis: TensorOperatorBasis | None = None) -> float:
    """Hilbert-Schmidt distance of the Liouville matrix from its group average."""
    return hs_norm(e.liouville - twirl_superop(e, in_rep, out_rep, basis).liouville)


def superop_mode_project(e: Superoperator, in_rep, out_rep, mu, m) -> Superoperator:
    """(mu,m) modal component of a superoperator (Liouville-space masking)."""
    tmu, tm = _twice(mu), _twice(m)
    basis = superop_tensor_basis(in_rep, out_rep, ranks={tmu})
    return Superoperator(basis.component(e.liouville, mu, m), e.in_dim, e.out_dim)


@dataclass(frozen=True)
class SuperopModeSpectrum:
    components: dict   # (tmu, tm) -> Superoperator
    norms: dict        # (tmu, tm) -> Hilbert-Schmidt norm of the component

    def modes(self, tol: float = 1e-10) -> set:
        return {k for k, v in self.norms.items() if v > tol}


def superop_mode_spectrum(e: Superoperator, in_rep, out_rep, tol: float = 0.0,
                          keep_components: bool = True) -> SuperopModeSpectrum:
    basis = superop_tensor_basis(in_rep, out_rep)
    acc: dict = {}
    for (tmu, tm, a), t in basis.ops.items():
        c = np.vdot(t, e.liouville)
        if (tmu, tm) not in acc:
            acc[(tmu, tm)] = np.zeros_like(e.liouville)
        acc[(tmu, tm)] += c * t
    comps, norms = {}, {}
    for mode, mat in sorted(acc.items()):
        nrm = float(np.linalg.norm(mat))
        if nrm > tol:
            norms[mode] = nrm
            if keep_components:
                comps[mode] = Superoperator(mat, e.in_dim, e.out_dim)
    return SuperopModeSpectrum(comps, norms)


# ---------------------------------------------------------------------------
# block-diagonal coefficient reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CovariantChannelCoefficients:
    """Per-rank matrices c^(mu)[beta, alpha] fully specifying a covariant map."""

    mu_blocks: dict
    in_basis: TensorOperatorBasis
    out_basis: TensorOperatorBasis

    def ranks(self) -> list:
        return sorted(self.mu_blocks)

    def coefficient(self, mu) -> complex:
        block = self.mu_blocks[_twice(mu)]
        if block.shape != (1, 1):
            raise ValueError("coefficient(mu) is only defined for multiplicity-free ranks")
        return complex(block[0, 0])


def reduce_covariant(e: Superoperator, in_basis: TensorOperatorBasis,
                     out_basis: TensorOperatorBasis, tol: float = 1e-8):
    """Coefficients c^(mu)_{beta alpha} = tr(S^dag E(T)) computed at the highest
    weight m = mu and cross-checked at m = -mu; returns (coefficients, residual)
    where residual = max_mu,m,alpha ||E(T_m^(mu,a)) - sum_b c_ba S_m^(mu,b)||_1.

    A residual above tol means e is not covariant (reported, not raised).
    """
    common = sorted(set(in_basis.ranks()) & set(out_basis.ranks()))
    blocks = {}
    for tmu in common:
        in_alphas = in_basis.alphas_for(tmu)
        out_alphas = out_basis.alphas_for(tmu)
        c = np.zeros((len(out_alphas), len(in_alphas)), dtype=complex)
        for ja, a in enumerate(in_alphas):
            img_hi = apply_superop(e, in_basis.ops[(tmu, tmu, a)])
            for jb, b in enumerate(out_alphas):
                c[jb, ja] = np.vdot(out_basis.ops[(tmu, tmu, b)], img_hi)
        blocks[tmu] = c
    coeffs = CovariantChannelCoefficients(blocks, in_basis, out_basis)

    residual = 0.0
    for (tmu, tm, a), t in in_basis.ops.items():
        img = apply_superop(e, t)
        recon = np.zeros((out_basis.dim_left, out_basis.dim_right), dtype=complex)
        if tmu in blocks:
            in_alphas = in_basis.alphas_for(tmu)
            out_alphas = out_basis.alphas_for(tmu)
            col = blocks[tmu][:, in_alphas.index(a)]
            for jb, b in enumerate(out_alphas):
                recon += col[jb] * out_basis.ops[(tmu, tm, b)]
        residual = max(residual, trace_norm(img - recon))
    return coeffs, residual


def apply_reduced(c: CovariantChannelCoefficients, x) -> np.ndarray:
    """Reconstruct E(x) from the coefficient matrices."""
    x = _as_matrix(x)
    if x.shape != (c.in_basis.dim_left, c.in_basis.dim_right):
        raise ValueError(f"operator shape {x.shape} does not match the input basis")
    out = np.zeros((c.out_basis.dim_left, c.out_basis.dim_right), dtype=complex)
    for tmu, block in c.mu_blocks.items():
        in_alphas = c.in_basis.alphas_for(tmu)
        out_alphas = c.out_basis.alphas_for(tmu)
        for im in range(tmu + 1):
            tm = tmu - 2 * im
            coeffs = np.array([np.vdot(c.in_basis.ops[(tmu, tm, a)], x) for a in in_alphas])
            weights = block @ coeffs
            for jb, b in enumerate(out_alphas):
                out += weights[jb] * c.out_basis.ops[(tmu, tm, b)]
    return out


def compose_reduced(d: CovariantChannelCoefficients,
                    c: CovariantChannelCoefficients) -> CovariantChannelCoefficients:
    """Coefficients of d after c: per-rank matrix products d^(mu) c^(mu)."""
    mid_out, mid_in = c.out_basis, d.in_basis
    if (mid_out.dim_left, mid_out.dim_right) != (mid_in.dim_left, mid_in.dim_right) \
            or mid_out.pair_labels != mid_in.pair_labels:
        raise ValueError("middle bases do not match")
    blocks = {}
    for tmu in set(d.mu_blocks) & set(c.mu_blocks):
        blocks[tmu] = d.mu_blocks[tmu] @ c.mu_blocks[tmu]
    return CovariantChannelCoefficients(blocks, c.in_basis, d.out_basis)


@dataclass(frozen=True)
class CoefficientBoundsReport:
    bounds: dict        # (tmu, tm) -> trace-norm ratio bound ||T_m|| / ||S_m||
    violations: tuple   # tmu values with |c| above the binding (min over m) bound
    ok: bool


def coefficient_bounds_check(c: CovariantChannelCoefficients, tol: float = 1e-9) -> CoefficientBoundsReport:
    """Positivity/trace-preservation necessary bounds |c^(mu)| <= ||T_m||/||S_m||
    (and hence <= 1 on equal spaces); multiplicity-free bases only."""
    bounds = {}
    violations = []
    for tmu, block in c.mu_blocks.items():
        if block.shape != (1, 1):
            raise ValueError("bounds check requires multiplicity-free bases")
        a = c.in_basis.alphas_for(tmu)[0]
        b = c.out_basis.alphas_for(tmu)[0]
        per_m = []
        for im in range(tmu + 1):
            tm = tmu - 2 * im
            ratio = trace_norm(c.in_basis.ops[(tmu, tm, a)]) / trace_norm(c.out_basis.ops[(tmu, tm, b)])
            bounds[(tmu, tm)] = ratio
            per_m.append(ratio)
        if abs(block[0, 0]) > min(per_m) + tol:
            violations.append(tmu)
    return CoefficientBoundsReport(bounds, tuple(violations), not violations)


# ---------------------------------------------------------------------------
# measurement channels
# ---------------------------------------------------------------------------

def measurement_channel(povm, rep, tol: float = 0.0):
    """Channel M(X) = sum_lambda tr(X M_lambda)|lambda><lambda| into invariant
    flag states, together with its mode spectrum (which by construction equals
    the union of the POVM elements' modes)."""
    n = len(povm.elements)
    d = povm.dim
    liou = np.zeros((n * n, d * d), dtype=complex)
    for lam, m in enumerate(povm.elements):
        flag = np.zeros((n, n), dtype=complex)
        flag[lam, lam] = 1.0
        liou += np.outer(vec(flag), vec(m.T))
    chan = Superoperator(liou, d, n, trace_preserving=True)
    out_rep = SU2Representation(((0, n),))
    spectrum = superop_mode_spectrum(chan, rep, out_rep, tol=tol, keep_components=False)
    return chan, spectrum


# ---------------------------------------------------------------------------
# simulation with a quantum reference frame
# ---------------------------------------------------------------------------

def simulate_with_frame(joint: Superoperator, frame, sys_rep, rf_rep,
                        tol: float = 1e-8) -> Superoperator:
    """Effective system channel E(X) = tr_RF(joint(X x rho_RF)) of a covariant
    joint channel; rejects joint maps whose covariance residual exceeds tol."""
    frame = _as_matrix(frame)
    dec_sys = decompose(sys_rep) if isinstance(sys_rep, SU2Representation) else sys_rep
    dec_rf = decompose(rf_rep) if isinstance(rf_rep, SU2Representation) else rf_rep
    d_sys, d_rf = dec_sys.dim, dec_rf.dim
    if joint.in_dim != d_sys * d_rf or joint.out_dim != d_sys * d_rf:
        raise ValueError("joint channel dimensions do not match sys x RF")
    if frame.shape != (d_rf, d_rf):
        raise ValueError("frame state dimension does not match the RF representation")
    dec_joint = dec_sys.tensor(dec_rf)
    residual = superop_covariance_residual(joint, dec_joint, dec_joint)
    if residual > tol:
        raise ValueError(f"joint channel is not covariant: residual {residual:.3e} > {tol:.1e}")

    def act(x):
        return partial_trace(apply_superop(joint, np.kron(x, frame)), (d_sys, d_rf), "A")

    return superop_from_map(act, d_sys, d_sys)


def covariant_joint_unitary(sys_rep: SU2Representation, rf_rep: SU2Representation,
                            phases) -> np.ndarray:
    """Unitary sum_J e^{i phi_J} Pi_J built from total-spin projectors of
    sys x RF; commutes with the joint representation by construction.

    phases: map from twice_J to a phase phi_J (missing entries get 0).
    """
    dec = decompose(sys_rep).tensor(decompose(rf_rep))
    u = np.zeros((dec.dim, dec.dim), dtype=complex)
    for tj, v in dec.components:
        u += np.exp(1j * phases.get(tj, 0.0)) * (v @ v.conj().T)
    return u


# ---------------------------------------------------------------------------
# state-space helpers built on the channel machinery
# ---------------------------------------------------------------------------

def random_covariant_channel(in_rep, out_rep, rng: np.random.Generator,
                             n_kraus: int = 3, twirl_basis: TensorOperatorBasis | None = None,
                             max_tries: int = 20) -> Superoperator:
    """Random rotationally covariant channel: twirl of a random CP map, made
    trace preserving by an invariant pre-correction (resampling when the
    correction is not PSD-safe)."""
    dec_in = decompose(in_rep) if isinstance(in_rep, SU2Representation) else in_rep
    dec_out = decompose(out_rep) if isinstance(out_rep, SU2Representation) else out_rep
    d_in, d_out = dec_in.dim, dec_out.dim
    twirl_basis = twirl_basis or superop_twirl_basis(dec_in, dec_out)
    for _ in range(max_tries):
        kraus = [rng.normal(size=(d_out, d_in)) + 1j * rng.normal(size=(d_out, d_in))
                 for _ in range(n_kraus)]
        cp = channel_from_kraus(kraus)
        cov = twirl_superop(cp, dec_in, dec_out, basis=twirl_basis)
        z = unvec(cov.liouville.conj().T @ vec(np.eye(d_out)), (d_in, d_in))
        z = (z + z.conj().T) / 2
        w, v = np.linalg.eigh(z)
        if w.min() < 1e-6 * w.max():
            continue
        corr = (v / np.sqrt(w)) @ v.conj().T
        pre = Superoperator(np.kron(corr, corr.conj()), d_in, d_in)
        out = compose_superops(cov, pre)
        return Superoperator(out.liouville, d_in, d_out, trace_preserving=True)
    raise RuntimeError("failed to draw a PSD-safe covariant channel")


def random_covariant_instrument(in_rep, out_rep, rng: np.random.Generator,
                                n_outcomes: int = 2, max_tries: int = 20) -> list:
    """Covariant CP maps (one per flagged outcome) summing to a channel."""
    dec_in = decompose(in_rep) if isinstance(in_rep, SU2Representation) else in_rep
    dec_out = decompose(out_rep) if isinstance(out_rep, SU2Representation) else out_rep
    d_in, d_out = dec_in.dim, dec_out.dim
    basis = superop_twirl_basis(dec_in, dec_out)
    for _ in range(max_tries):
        parts = []
        for _ in range(n_outcomes):
            k = rng.normal(size=(d_out, d_in)) + 1j * rng.normal(size=(d_out, d_in))
            parts.append(twirl_superop(channel_from_kraus([k]), dec_in, dec_out, basis=basis))
        z = sum(unvec(p.liouville.conj().T @ vec(np.eye(d_out)), (d_in, d_in)) for p in parts)
        z = (z + z.conj().T) / 2
        w, v = np.linalg.eigh(z)
        if w.min() < 1e-6 * w.max():
            continue
        corr = (v / np.sqrt(w)) @ v.conj().T
        pre = Superoperator(np.kron(corr, corr.conj()), d_in, d_in)
        return [compose_superops(p, pre) for p in parts]
    raise RuntimeError("failed to draw a PSD-safe covariant instrument")


@dataclass(frozen=True)
class MissingModeReport:
    """Direct-sum reference frame whose rank-1 m = +-1 modes vanish identically
    even though the state is rotation sensitive."""

    amplitudes: np.ndarray
    rep: SU2Representation
    rank1_norms: dict        # tm -> F_{1,m}
    f_mu0_example: tuple     # (twice_mu, value) with value > 0, mu > 0
    min_rotation_overlap: float
    beta_at_min: float


def missing_mode_family(n: int, beta_points: int = 72, max_dim: int = 200) -> MissingModeReport:
    """States (1/sqrt N) sum_k |j=N^2+2k, m=N^2+k> on the direct sum of those
    irreps: adjacent js differ by 2, so no rank-1 m=+-1 component survives."""
    if n < 1:
        raise ValueError("n must be >= 1")
    tjs = [2 * (n * n + 2 * k) for k in range(1, n + 1)]
    rep = SU2Representation(tuple((tj, 1) for tj in tjs))
    if rep.dim > max_dim:
        raise ValueError(f"representation dimension {rep.dim} exceeds the {max_dim} limit")
    psi = np.zeros(rep.dim, dtype=complex)
    off = 0
    for k, tj in enumerate(tjs, start=1):
        tm = 2 * (n * n + k)
        psi[off + (tj - tm) // 2] = 1 / np.sqrt(n)
        off += tj + 1
    rho = np.outer(psi, psi.conj())

    dec = decompose(rep)
    rank1 = _tensor_ops_between(dec, dec, ranks={2})
    rank1_norms = {}
    for tm in (-2, 0, 2):
        comp = np.zeros_like(rho)
        for (tmu, tmm, a), t in rank1.ops.items():
            if tmm == tm:
                comp += t * np.vdot(t, rho)
        rank1_norms[tm] = trace_norm(comp)

    betas = np.linspace(0, np.pi, beta_points)
    overlaps = []
    for b in betas:
        u = rep.unitary(0.0, b, 0.0)
        overlaps.append(abs(np.vdot(psi, u @ psi)) ** 2)
    overlaps = np.array(overlaps)
    imin = int(np.argmin(overlaps))
    return MissingModeReport(psi, rep, rank1_norms, (2, rank1_norms[0]),
                             float(overlaps[imin]), float(betas[imin]))
