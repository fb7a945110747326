import numpy as np
import pytest

from negacap.channel import Channel, choi_from_kraus
from negacap.linalg import BipartiteDims


@pytest.fixture
def rng():
    return np.random.default_rng(20200117)


def rand_hermitian(rng, n, scale=1.0):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (z + z.conj().T) / 2.0


def rand_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def rand_density(rng, n, rank=None):
    k = rank or n
    g = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def rand_kraus_list(rng, d_in, d_out, k):
    """k Kraus operators of a CPTP map, via a random isometry."""
    z = rng.normal(size=(k * d_out, d_in)) + 1j * rng.normal(size=(k * d_out, d_in))
    q, _ = np.linalg.qr(z)
    return [q[i * d_out : (i + 1) * d_out, :] for i in range(k)]


def rand_cptp(rng, dims: BipartiteDims, k=3, out_dims=None) -> Channel:
    out_dims = out_dims or dims
    ops = rand_kraus_list(rng, dims.total, out_dims.total, k)
    return choi_from_kraus([(1.0, v) for v in ops], dims, out_dims)


def rand_hp_channel(rng, dims: BipartiteDims, k=3) -> Channel:
    d = dims.total
    terms = [
        (float(rng.normal()), rand_unitary(rng, d) @ np.diag(rng.normal(size=d)))
        for _ in range(k)
    ]
    return choi_from_kraus(terms, dims, dims)


def rand_sub_operations(rng, dims: BipartiteDims, k=3):
    """Single-Kraus CP sub-operations summing to a TP map."""
    d = dims.total
    ops = rand_kraus_list(rng, d, d, k)
    return [choi_from_kraus([(1.0, v)], dims, dims) for v in ops]


def rand_unitary_mixture(rng, dims: BipartiteDims, k=2):
    """sqrt(p_i) U_i sub-operations of a random mixed-unitary channel."""
    d = dims.total
    probs = rng.dirichlet(np.ones(k))
    return [
        choi_from_kraus([(1.0, np.sqrt(p) * rand_unitary(rng, d))], dims, dims)
        for p in probs
    ]


def bell_state(d=2):
    psi = np.zeros(d * d, dtype=complex)
    for i in range(d):
        psi[i * d + i] = 1.0 / np.sqrt(d)
    return psi


def projector(psi):
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())
