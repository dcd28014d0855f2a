import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from asymmodes import (
    POVM,
    DensityMatrix,
    apply_superop,
    channel_from_kraus,
    compose_superops,
    hs_inner,
    identity_superop,
    partial_trace,
    random_density_matrix,
    tensor_product,
    trace_norm,
    unvec,
    vec,
)

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_cptp_kraus(rng, d, n_kraus=3):
    g = random_complex(rng, (n_kraus * d, d))
    q, _ = np.linalg.qr(g)
    return [q[i * d:(i + 1) * d, :] for i in range(n_kraus)]


def test_hs_inner_identity_and_paulis():
    assert hs_inner(I2, I2) == pytest.approx(2)
    assert hs_inner(SZ, SZ) == pytest.approx(2)


def test_hs_inner_positive_and_conjugate_symmetric():
    rng = np.random.default_rng(0)
    a = random_complex(rng, (4, 4))
    b = random_complex(rng, (4, 4))
    self_inner = hs_inner(a, a)
    assert self_inner.imag == pytest.approx(0, abs=1e-12)
    assert self_inner.real >= 0
    assert hs_inner(a, b) == pytest.approx(np.conj(hs_inner(b, a)))


def test_hs_inner_shape_mismatch():
    with pytest.raises(ValueError):
        hs_inner(I2, np.eye(3))


def test_trace_norm_basics():
    assert trace_norm(I2) == pytest.approx(2)
    assert trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2)
    with pytest.raises(ValueError):
        trace_norm(np.ones((2, 3)))


def test_trace_norm_vs_eigendecomposition_oracle():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = random_complex(rng, (5, 5))
        evals = np.linalg.eigvalsh(a.conj().T @ a)
        assert trace_norm(a) == pytest.approx(np.sqrt(np.clip(evals, 0, None)).sum(), abs=1e-10)


def test_trace_norm_unitary_invariance_and_triangle():
    rng = np.random.default_rng(2)
    a = random_complex(rng, (4, 4))
    b = random_complex(rng, (4, 4))
    q, _ = np.linalg.qr(random_complex(rng, (4, 4)))
    assert trace_norm(q @ a @ q.conj().T) == pytest.approx(trace_norm(a), abs=1e-10)
    assert trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-10


def test_trace_norm_monotone_under_channels():
    rng = np.random.default_rng(3)
    for trial in range(200):
        d = int(rng.integers(2, 5))
        chan = channel_from_kraus(random_cptp_kraus(rng, d))
        assert chan.trace_preserving
        x = random_complex(rng, (d, d))
        assert trace_norm(apply_superop(chan, x)) <= trace_norm(x) + 1e-10


def test_tensor_product():
    assert np.allclose(tensor_product(I2, I2), np.eye(4))
    assert np.allclose(tensor_product(SZ, I2), np.diag([1, 1, -1, -1]))
    rng = np.random.default_rng(4)
    a, b = random_complex(rng, (3, 3)), random_complex(rng, (2, 2))
    assert np.trace(tensor_product(a, b)) == pytest.approx(np.trace(a) * np.trace(b))


def test_partial_trace():
    rng = np.random.default_rng(5)
    rho = random_density_matrix(2, rng)
    tau = random_density_matrix(3, rng)
    assert np.allclose(partial_trace(np.kron(rho, tau), (2, 3), "A"), rho)
    assert np.allclose(partial_trace(np.kron(rho, tau), (2, 3), "B"), tau)
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    assert np.allclose(partial_trace(np.outer(bell, bell.conj()), (2, 2), "A"), I2 / 2)
    x = random_complex(rng, (6, 6))
    assert np.trace(partial_trace(x, (2, 3), "B")) == pytest.approx(np.trace(x))
    with pytest.raises(ValueError):
        partial_trace(x, (2, 2), "A")


def test_channel_from_kraus():
    ident = channel_from_kraus([I2])
    assert np.allclose(ident.liouville, np.eye(4))
    assert ident.trace_preserving
    flip = channel_from_kraus([SX])
    rng = np.random.default_rng(6)
    rho = random_density_matrix(2, rng)
    assert np.allclose(apply_superop(flip, rho), SX @ rho @ SX)
    kraus = random_cptp_kraus(rng, 3)
    chan = channel_from_kraus(kraus)
    x = random_complex(rng, (3, 3))
    direct = sum(k @ x @ k.conj().T for k in kraus)
    assert np.abs(apply_superop(chan, x) - direct).max() < 1e-12
    with pytest.raises(ValueError):
        channel_from_kraus([I2, np.eye(3)])


def test_apply_superop_identity_zero_composition():
    rng = np.random.default_rng(7)
    x = random_complex(rng, (3, 3))
    assert np.allclose(apply_superop(identity_superop(3), x), x)
    zero = channel_from_kraus([np.zeros((3, 3))])
    assert np.allclose(apply_superop(zero, x), 0)
    e1 = channel_from_kraus(random_cptp_kraus(rng, 3))
    e2 = channel_from_kraus(random_cptp_kraus(rng, 3))
    assert np.allclose(apply_superop(e2, apply_superop(e1, x)),
                       apply_superop(compose_superops(e2, e1), x))


def test_vec_convention_row_stacking():
    d = 3
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d))
            e[i, j] = 1
            v = vec(e)
            assert v[i * d + j] == 1
            assert np.count_nonzero(v) == 1


@settings(deadline=None, max_examples=25)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=5),
       st.integers(min_value=0, max_value=2**31 - 1))
def test_vec_unvec_roundtrip(rows, cols, seed):
    rng = np.random.default_rng(seed)
    x = random_complex(rng, (rows, cols))
    assert np.array_equal(unvec(vec(x), (rows, cols)), x)


def test_partial_trace_of_tensor_recovers_factors():
    rng = np.random.default_rng(8)
    a = random_complex(rng, (3, 3))
    b = random_complex(rng, (2, 2))
    ab = tensor_product(a, b)
    assert np.allclose(partial_trace(ab, (3, 2), "A"), a * np.trace(b))
    assert np.allclose(partial_trace(ab, (3, 2), "B"), b * np.trace(a))


def test_density_matrix_validation():
    rng = np.random.default_rng(9)
    rho = DensityMatrix.from_array(random_density_matrix(3, rng))
    assert rho.dim == 3
    with pytest.raises(ValueError):
        DensityMatrix.from_array(np.diag([0.9, 0.3]))
    with pytest.raises(ValueError):
        DensityMatrix.from_array(np.array([[0.5, 0.5], [0.0, 0.5]]))
    with pytest.raises(ValueError):
        DensityMatrix.from_array(np.diag([1.5, -0.5]))


def test_povm_validation():
    p = POVM.from_elements([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])], labels=("up", "down"))
    assert p.dim == 2
    with pytest.raises(ValueError):
        POVM.from_elements([np.diag([1.0, 0.0])])
    with pytest.raises(ValueError):
        POVM.from_elements([np.diag([1.5, 1.0]), np.diag([-0.5, 0.0])])
