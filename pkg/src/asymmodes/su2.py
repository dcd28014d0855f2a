"""SU(2)/SO(3) representation machinery.

Conventions (fixed throughout):
  * basis ordering within a spin-j multiplet is m = j, j-1, ..., -j, so Lz is
    diagonal with descending entries and all matrix elements of Lx are real;
  * rotations are zyz Euler angles, D^j(a,b,g) = e^{-ia Lz} e^{-ib Ly} e^{-ig Lz};
  * Clebsch-Gordan coefficients are Condon-Shortley real;
  * irreducible tensor operators transform as
        U(g) T_m U(g)^dag = sum_{m'} D^mu_{m'm}(g) T_{m'},
    are Hilbert-Schmidt orthonormal, and are built from the coupling
        T^(mu)_m = sum_{ma,mb} (-1)^(jb-mb) C(ja ma; jb -mb | mu m) |ja ma><jb mb|,
    which fixes the residual per-rank phase (e.g. T^(1)_0 is a positive
    multiple of Lz and T^(1)_{+-1} = -+ c1 L_{+-}/sqrt(2)).

Half-integer quantum numbers are carried as twice-values (ints) internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import _as_matrix


# ---------------------------------------------------------------------------
# half-integers
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class HalfInteger:
    """A nonnegative-or-negative half-integer stored as twice its value."""

    twice: int

    @property
    def value(self) -> float:
        return self.twice / 2

    def __float__(self) -> float:
        return self.twice / 2

    def __str__(self) -> str:
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    @classmethod
    def coerce(cls, x) -> "HalfInteger":
        if isinstance(x, HalfInteger):
            return x
        t = 2 * float(x)
        ti = round(t)
        if abs(t - ti) > 1e-9:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(ti))


def _twice(x) -> int:
    return HalfInteger.coerce(x).twice


# ---------------------------------------------------------------------------
# angular momentum operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AngularMomentumOps:
    j: HalfInteger
    Lz: np.ndarray
    Lplus: np.ndarray
    Lminus: np.ndarray
    L2: np.ndarray

    @property
    def Lx(self) -> np.ndarray:
        return (self.Lplus + self.Lminus) / 2

    @property
    def Ly(self) -> np.ndarray:
        return (self.Lplus - self.Lminus) / 2j

    @property
    def dim(self) -> int:
        return self.j.twice + 1


@lru_cache(maxsize=None)
def _angular_momentum(tj: int) -> AngularMomentumOps:
    j = tj / 2
    dim = tj + 1
    m = j - np.arange(dim)
    lz = np.diag(m.astype(complex))
    lp = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        lp[i - 1, i] = math.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    l2 = j * (j + 1) * np.eye(dim, dtype=complex)
    return AngularMomentumOps(HalfInteger(tj), lz, lp, lp.conj().T, l2)


def angular_momentum(j) -> AngularMomentumOps:
    """Ladder-convention spin-j operators, <j,m+1|L+|j,m> = sqrt(j(j+1)-m(m+1))."""
    tj = _twice(j)
    if tj < 0:
        raise ValueError("j must be >= 0")
    return _angular_momentum(tj)


# ---------------------------------------------------------------------------
# Clebsch-Gordan (Racah sum, log-space factorials, Condon-Shortley phases)
# ---------------------------------------------------------------------------

def _lnfact(n: int) -> float:
    return math.lgamma(n + 1)


def _cg_twice(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int) -> float:
    if tM != tm1 + tm2:
        return 0.0
    if not (abs(tj1 - tj2) <= tJ <= tj1 + tj2) or (tj1 + tj2 + tJ) % 2 != 0:
        return 0.0
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tM) > tJ:
        return 0.0
    if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or (tJ + tM) % 2:
        return 0.0

    def f(tx: int) -> float:
        return _lnfact(tx // 2)

    pref = 0.5 * (
        math.log(tJ + 1.0)
        + f(tj1 + tj2 - tJ) + f(tj1 - tj2 + tJ) + f(-tj1 + tj2 + tJ) - f(tj1 + tj2 + tJ + 2)
        + f(tj1 + tm1) + f(tj1 - tm1) + f(tj2 + tm2) + f(tj2 - tm2) + f(tJ + tM) + f(tJ - tM)
    )
    tmin = max(0, tj2 - tJ - tm1, tj1 - tJ + tm2)
    tmax = min(tj1 + tj2 - tJ, tj1 - tm1, tj2 + tm2)
    total = 0.0
    t = tmin
    while t <= tmax:
        ln = pref - (
            f(t) + f(tj1 + tj2 - tJ - t) + f(tj1 - tm1 - t) + f(tj2 + tm2 - t)
            + f(tJ - tj2 + tm1 + t) + f(tJ - tj1 - tm2 + t)
        )
        total += (-1.0) ** (t // 2) * math.exp(ln)
        t += 2
    return total


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """<j1 m1; j2 m2 | J M>; returns 0 when selection rules fail."""
    return _cg_twice(_twice(j1), _twice(m1), _twice(j2), _twice(m2), _twice(J), _twice(M))


# ---------------------------------------------------------------------------
# Wigner rotation matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _ly_eig(tj: int):
    ops = _angular_momentum(tj)
    return np.linalg.eigh(ops.Ly)


def wigner_d(j, beta: float) -> np.ndarray:
    """Little-d matrix <j m'|e^{-i beta Ly}|j m> (rows/cols ordered m = j..-j)."""
    w, v = _ly_eig(_twice(j))
    return (v * np.exp(-1j * beta * w)) @ v.conj().T


def wigner_D(j, alpha: float, beta: float, gamma: float) -> np.ndarray:
    """Unitary irrep matrix for zyz Euler angles."""
    tj = _twice(j)
    m = tj / 2 - np.arange(tj + 1)
    return np.exp(-1j * alpha * m)[:, None] * wigner_d(j, beta) * np.exp(-1j * gamma * m)[None, :]


def haar_angles(rng: np.random.Generator, n: int = 1) -> np.ndarray:
    """n Haar-distributed zyz Euler triples: alpha,gamma ~ U[0,2pi), cos(beta) ~ U[-1,1]."""
    alpha = rng.uniform(0, 2 * np.pi, n)
    beta = np.arccos(rng.uniform(-1, 1, n))
    gamma = rng.uniform(0, 2 * np.pi, n)
    return np.column_stack([alpha, beta, gamma])


def axis_to_euler(axis) -> tuple:
    """(alpha, beta) with D(alpha,beta,0) Lz D^dag = L_axis for the unit axis."""
    ax = np.asarray(axis, dtype=float)
    ax = ax / np.linalg.norm(ax)
    beta = math.acos(np.clip(ax[2], -1.0, 1.0))
    alpha = math.atan2(ax[1], ax[0])
    return alpha, beta


# ---------------------------------------------------------------------------
# representations: block form and irrep decompositions with isometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SU2Representation:
    """Direct sum of spin blocks; block (j, mult) contributes D^j(g) x I_mult."""

    blocks: tuple  # of (twice_j, mult)

    def __post_init__(self):
        norm = tuple((int(tj), int(mult)) for tj, mult in self.blocks)
        for tj, mult in norm:
            if tj < 0 or mult < 1:
                raise ValueError(f"invalid block (twice_j={tj}, mult={mult})")
        object.__setattr__(self, "blocks", norm)

    @classmethod
    def spin(cls, j) -> "SU2Representation":
        return cls(((_twice(j), 1),))

    @classmethod
    def of_spins(cls, js) -> "SU2Representation":
        return cls(tuple((_twice(j), 1) for j in js))

    @property
    def dim(self) -> int:
        return sum((tj + 1) * mult for tj, mult in self.blocks)

    @property
    def max_twice_j(self) -> int:
        return max(tj for tj, _ in self.blocks)

    def unitary(self, alpha: float, beta: float, gamma: float) -> np.ndarray:
        mats = [np.kron(wigner_D(HalfInteger(tj), alpha, beta, gamma), np.eye(mult))
                for tj, mult in self.blocks]
        out = np.zeros((self.dim, self.dim), dtype=complex)
        off = 0
        for m in mats:
            d = m.shape[0]
            out[off:off + d, off:off + d] = m
            off += d
        return out

    def generator_lz(self) -> np.ndarray:
        parts = []
        for tj, mult in self.blocks:
            parts.append(np.kron(angular_momentum(HalfInteger(tj)).Lz, np.eye(mult)))
        out = np.zeros((self.dim, self.dim), dtype=complex)
        off = 0
        for p in parts:
            d = p.shape[0]
            out[off:off + d, off:off + d] = p
            off += d
        return out


@dataclass(frozen=True)
class DecomposedRep:
    """A unitary SU(2) rep presented as irrep isometries: U(g) = sum V D^j(g) V^dag."""

    dim: int
    components: tuple  # of (twice_j, isometry ndarray (dim, twice_j+1))

    @property
    def max_twice_j(self) -> int:
        return max(tj for tj, _ in self.components)

    def unitary(self, alpha: float, beta: float, gamma: float) -> np.ndarray:
        u = np.zeros((self.dim, self.dim), dtype=complex)
        for tj, v in self.components:
            u += v @ wigner_D(HalfInteger(tj), alpha, beta, gamma) @ v.conj().T
        return u

    def conjugate(self) -> "DecomposedRep":
        comps = []
        for tj, v in self.components:
            dim = tj + 1
            y = np.zeros((dim, dim))
            for idx in range(dim):
                y[dim - 1 - idx, idx] = (-1.0) ** idx   # e^{-i pi Ly}
            comps.append((tj, v.conj() @ y))
        return DecomposedRep(self.dim, tuple(comps))

    def tensor(self, other: "DecomposedRep") -> "DecomposedRep":
        comps = []
        for tja, va in self.components:
            for tjb, vb in other.components:
                for tJ in range(abs(tja - tjb), tja + tjb + 1, 2):
                    w = np.zeros((self.dim * other.dim, tJ + 1), dtype=complex)
                    for iM in range(tJ + 1):
                        tM = tJ - 2 * iM
                        for ia in range(tja + 1):
                            tma = tja - 2 * ia
                            tmb = tM - tma
                            if abs(tmb) > tjb:
                                continue
                            c = _cg_twice(tja, tma, tjb, tmb, tJ, tM)
                            if c != 0.0:
                                w[:, iM] += c * np.kron(va[:, ia], vb[:, (tjb - tmb) // 2])
                    comps.append((tJ, w))
        return DecomposedRep(self.dim * other.dim, tuple(comps))


def decompose(rep) -> DecomposedRep:
    """Irrep isometries of a block-form representation (identity embeddings)."""
    if isinstance(rep, DecomposedRep):
        return rep
    comps = []
    off = 0
    eye = np.eye(rep.dim, dtype=complex)
    for tj, mult in rep.blocks:
        dimj = tj + 1
        for a in range(mult):
            cols = [off + i * mult + a for i in range(dimj)]
            comps.append((tj, eye[:, cols]))
        off += dimj * mult
    return DecomposedRep(rep.dim, tuple(comps))


# ---------------------------------------------------------------------------
# irreducible tensor operator bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TensorOperatorBasis:
    """Orthonormal covariant operator basis between two decomposed reps.

    ops maps (twice_mu, twice_m, alpha) to a dim_left x dim_right matrix;
    alpha enumerates ordered (left-component, right-component) pairs and
    pair_labels[alpha] records their (twice_j_left, twice_j_right).
    """

    ops: dict
    dim_left: int
    dim_right: int
    pair_labels: tuple
    rep: SU2Representation | None = None

    @property
    def square(self) -> bool:
        return self.dim_left == self.dim_right

    def ranks(self) -> list:
        return sorted({tmu for tmu, _, _ in self.ops})

    def alphas_for(self, tmu: int) -> list:
        return sorted({a for mu, _, a in self.ops if mu == tmu})

    def op(self, mu, m, alpha: int = 0) -> np.ndarray:
        return self.ops[(_twice(mu), _twice(m), alpha)]

    def coefficient(self, x, mu, m, alpha: int = 0) -> complex:
        t = self.op(mu, m, alpha)
        return complex(np.vdot(t, x))

    def component(self, x, mu, m) -> np.ndarray:
        """(mu,m) mode component: sum_alpha T tr(T^dag x)."""
        x = _as_matrix(x)
        tmu, tm = _twice(mu), _twice(m)
        out = np.zeros((self.dim_left, self.dim_right), dtype=complex)
        for (u, mm, a), t in self.ops.items():
            if u == tmu and mm == tm:
                out += t * np.vdot(t, x)
        return out

    def reconstruct(self, x) -> np.ndarray:
        x = _as_matrix(x)
        out = np.zeros_like(x)
        for t in self.ops.values():
            out += t * np.vdot(t, x)
        return out


def _tensor_ops_between(left: DecomposedRep, right: DecomposedRep,
                        ranks: set | None = None) -> TensorOperatorBasis:
    """Covariant basis of B(H_right -> H_left): left(g) T right(g)^dag = sum D^mu T.

    Restricting `ranks` (a set of twice-mu) builds only those multiplets.
    """
    ops = {}
    labels = []
    for alpha, ((tja, va), (tjb, vb)) in enumerate(
        (p, q) for p in left.components for q in right.components
    ):
        labels.append((tja, tjb))
        for tmu in range(abs(tja - tjb), tja + tjb + 1, 2):
            if ranks is not None and tmu not in ranks:
                continue
            for im in range(tmu + 1):
                tm = tmu - 2 * im
                t = np.zeros((left.dim, right.dim), dtype=complex)
                for ia in range(tja + 1):
                    tma = tja - 2 * ia
                    tmb = tma - tm
                    if abs(tmb) > tjb:
                        continue
                    c = _cg_twice(tja, tma, tjb, -tmb, tmu, tm)
                    if c != 0.0:
                        sign = (-1.0) ** ((tjb - tmb) // 2)
                        t += (sign * c) * np.outer(va[:, ia], vb[:, (tjb - tmb) // 2].conj())
                ops[(tmu, tm, alpha)] = t
    return TensorOperatorBasis(ops, left.dim, right.dim, tuple(labels))


_basis_cache: dict = {}


def tensor_basis_general(rep: SU2Representation) -> TensorOperatorBasis:
    """Orthonormal irreducible tensor operator basis spanning B(H) for a
    block-form representation; alpha runs over irrep-copy pairs."""
    if rep not in _basis_cache:
        dec = decompose(rep)
        basis = _tensor_ops_between(dec, dec)
        _basis_cache[rep] = TensorOperatorBasis(basis.ops, basis.dim_left, basis.dim_right,
                                                basis.pair_labels, rep=rep)
    return _basis_cache[rep]


def tensor_basis_spin_j(j) -> TensorOperatorBasis:
    """Multiplicity-free basis for a single spin-j irrep, ranks 0..2j."""
    return tensor_basis_general(SU2Representation.spin(j))


def tensor_basis_for(rep_or_dec) -> TensorOperatorBasis:
    if isinstance(rep_or_dec, SU2Representation):
        return tensor_basis_general(rep_or_dec)
    dec = rep_or_dec
    return _tensor_ops_between(dec, dec)


# ---------------------------------------------------------------------------
# mode projections
# ---------------------------------------------------------------------------

def so3_mode_project(x, rep, mu, m, basis: TensorOperatorBasis | None = None) -> np.ndarray:
    """(mu,m) mode component of an operator via the tensor-basis projection."""
    x = _as_matrix(x)
    basis = basis or tensor_basis_for(rep)
    if x.shape != (basis.dim_left, basis.dim_right):
        raise ValueError(f"operator shape {x.shape} does not match representation")
    return basis.component(x, mu, m)


def _quadrature_grid(t_band: int):
    """Product grid exact for integrands with twice-band-limit t_band:
    alpha, gamma uniform on [0, 4pi), beta Gauss-Legendre in cos(beta)."""
    n_ag = t_band + 3
    xs, ws = np.polynomial.legendre.leggauss(t_band // 2 + 2)
    return n_ag, np.arccos(xs), ws


def _block_little_d(rep: SU2Representation, beta: float) -> np.ndarray:
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    off = 0
    for tj, mult in rep.blocks:
        d = np.kron(wigner_d(HalfInteger(tj), beta), np.eye(mult))
        n = d.shape[0]
        out[off:off + n, off:off + n] = d
        off += n
    return out


def quadrature_mode_components(xs, rep, modes) -> dict:
    """Group-average oracle: (mu,m) components d_mu int dg conj(u^mu_mm) U X U^dag
    for a batch of operators, in one pass over the quadrature grid (uniform
    alpha,gamma on [0,4pi), Gauss-Legendre in cos beta; exact by band limitation).

    xs: array (n, d, d); modes: iterable of (twice_mu, twice_m).
    Returns {(tmu, tm): array (n, d, d)}.
    """
    xs = np.asarray(xs, dtype=complex)
    single = xs.ndim == 2
    if single:
        xs = xs[None]
    modes = [(int(a), int(b)) for a, b in modes]
    mus = sorted({tmu for tmu, _ in modes})
    if isinstance(rep, SU2Representation):
        tjmax = rep.max_twice_j
        mvals = np.real(np.diag(rep.generator_lz()))
        dbeta = lambda b: _block_little_d(rep, b)  # noqa: E731
        dec = None
    else:
        dec = rep
        tjmax = dec.max_twice_j
        mvals = None
    t_band = 2 * tjmax + max(tmu for tmu, _ in modes)
    n_ag, betas, wbetas = _quadrature_grid(t_band)
    angles = 4 * np.pi * np.arange(n_ag) / n_ag
    out = {mode: np.zeros_like(xs) for mode in modes}

    if mvals is not None:
        # block-form fast path: U(a,b,g) = e^{-ia m} * d(b) * e^{-ig m} elementwise
        ph = np.exp(-1j * np.outer(angles, mvals))            # (n_ag, d)
        pair = (ph[:, None, :, None] * ph[None, :, None, :]).reshape(n_ag * n_ag, len(mvals), len(mvals))
        mode_phase = {}
        for tmu, tm in modes:
            mm = tm / 2
            pm = np.exp(1j * mm * angles)
            mode_phase[(tmu, tm)] = (pm[:, None] * pm[None, :]).reshape(-1)   # conj(e^{-i(a+g)m})
        for bb, wb in zip(betas, wbetas):
            db = dbeta(bb)
            ub = pair * db[None, :, :]                         # (G, d, d)
            rotated = np.einsum("gab,nbc,gdc->gnad", ub, xs, ub.conj(), optimize=True)
            dmu_b = {tmu: wigner_d(HalfInteger(tmu), bb) for tmu in mus}
            for tmu, tm in modes:
                im = (tmu - tm) // 2
                w = wb * mode_phase[(tmu, tm)] * np.conj(dmu_b[tmu][im, im])
                out[(tmu, tm)] += np.einsum("g,gnad->nad", w, rotated)
    else:
        for aa in angles:
            for gg in angles:
                for bb, wb in zip(betas, wbetas):
                    u = dec.unitary(aa, bb, gg)
                    rotated = np.einsum("ab,nbc,dc->nad", u, xs, u.conj())
                    for (tmu, tm) in modes:
                        im = (tmu - tm) // 2
                        val = wigner_D(HalfInteger(tmu), aa, bb, gg)[im, im]
                        out[(tmu, tm)] += (wb * np.conj(val)) * rotated
    for (tmu, tm) in modes:
        out[(tmu, tm)] *= (tmu + 1) / (2 * n_ag * n_ag)
    if single:
        out = {mode: v[0] for mode, v in out.items()}
    return out


def so3_mode_project_quadrature(x, rep, mu, m) -> np.ndarray:
    """Single-mode quadrature oracle (cross-check for so3_mode_project)."""
    tmu, tm = _twice(mu), _twice(m)
    return quadrature_mode_components(_as_matrix(x), rep, [(tmu, tm)])[(tmu, tm)]


def twirl_state(x, rep) -> np.ndarray:
    """Exact group average int dg U(g) X U(g)^dag by commutant projection."""
    dec = decompose(rep) if isinstance(rep, SU2Representation) else rep
    x = _as_matrix(x)
    out = np.zeros_like(x)
    by_j: dict = {}
    for tj, v in dec.components:
        by_j.setdefault(tj, []).append(v)
    for tj, vs in by_j.items():
        for va in vs:
            for vb in vs:
                out += (np.trace(va.conj().T @ x @ vb) / (tj + 1)) * (va @ vb.conj().T)
    return out


def axial_twirl(rho, j, axis=(0.0, 0.0, 1.0)) -> np.ndarray:
    """(1/2pi) int dtheta e^{-i theta L_axis} rho e^{+i theta L_axis} for spin-j:
    keeps the m-diagonal stripes in the rotated frame."""
    tj = _twice(j)
    rho = _as_matrix(rho)
    alpha, beta = axis_to_euler(axis)
    u = wigner_D(HalfInteger(tj), alpha, beta, 0.0)
    r = u.conj().T @ rho @ u
    m = tj / 2 - np.arange(tj + 1)
    mask = m[:, None] == m[None, :]
    return u @ np.where(mask, r, 0.0) @ u.conj().T


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def covariance_residual(basis: TensorOperatorBasis, left, right, angles) -> float:
    """Max |U_L T_m U_R^dag - sum_m' D^mu_{m'm} T_m'| over the basis and the
    supplied Euler triples."""
    left = decompose(left) if isinstance(left, SU2Representation) else left
    right = decompose(right) if isinstance(right, SU2Representation) else right
    multiplets: dict = {}
    for (tmu, tm, a), t in basis.ops.items():
        multiplets.setdefault((tmu, a), {})[tm] = t
    stacks = {}
    for (tmu, a), comp in multiplets.items():
        stacks[(tmu, a)] = np.stack([comp[tmu - 2 * i] for i in range(tmu + 1)])
    worst = 0.0
    for aa, bb, gg in np.atleast_2d(angles):
        ul = left.unitary(aa, bb, gg)
        ur = right.unitary(aa, bb, gg)
        for (tmu, a), ts in stacks.items():
            rotated = np.einsum("ab,pbc,dc->pad", ul, ts, ur.conj())
            predicted = np.einsum("pm,pij->mij", wigner_D(HalfInteger(tmu), aa, bb, gg), ts)
            worst = max(worst, float(np.abs(rotated - predicted).max()))
    return worst


def orthonormality_residual(basis: TensorOperatorBasis) -> float:
    keys = sorted(basis.ops)
    flat = np.stack([basis.ops[k].reshape(-1) for k in keys])
    gram = flat.conj() @ flat.T
    return float(np.abs(gram - np.eye(len(keys))).max())


@dataclass(frozen=True)
class ConjugationReport:
    residuals: dict   # (tmu, tm, alpha) -> distance of T^dag from the rank-mu span
    max_residual: float
    ok: bool


def hermitian_conjugate_mode_check(basis: TensorOperatorBasis, tol: float = 1e-10) -> ConjugationReport:
    """Checks each T^dag lies in the span of the same-rank operators (for SU(2)
    the conjugate irrep is equivalent to the irrep itself)."""
    by_mu: dict = {}
    for (tmu, tm, a), t in basis.ops.items():
        by_mu.setdefault(tmu, []).append(t)
    residuals = {}
    worst = 0.0
    for (tmu, tm, a), t in basis.ops.items():
        td = t.conj().T
        proj = np.zeros_like(td)
        for s in by_mu[tmu]:
            proj += s * np.vdot(s, td)
        r = float(np.linalg.norm(td - proj))
        residuals[(tmu, tm, a)] = r
        worst = max(worst, r)
    return ConjugationReport(residuals, worst, worst <= tol)
