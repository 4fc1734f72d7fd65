"""Magnetization-sector bases for spin-1/2 and spin-1 chains.

Classical configurations are vectors of local z eigenvalues: {+1, -1} for
s=1/2 (Pauli convention, total magnetization = half the sum of values) and
{+1, 0, -1} for s=1 (magnetization = plain sum).  Sites are indexed
0..L-1; swap pairs are (2p, 2p+1) for p = 0..L/2-1.  Basis states within
a sector are ordered lexicographically descending on the value vector, so
index 0 is the most-polarized-up configuration and indices are stable
across runs.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np


def local_values(s):
    """Allowed z eigenvalues at one site, in descending order."""
    if s == 0.5:
        return (1, -1)
    if s == 1:
        return (1, 0, -1)
    raise ValueError(f"local spin must be 0.5 or 1, got {s}")


def magnetization(config, s):
    """Total magnetization of a classical configuration (half the value sum for s=1/2)."""
    total = int(np.sum(config))
    return total / 2 if s == 0.5 else float(total)


def swapped_config(config):
    """The configuration with every pair (2p, 2p+1) exchanged."""
    c = np.asarray(config)
    return c.reshape(-1, 2)[:, ::-1].ravel()


@dataclass(frozen=True, eq=False)
class SectorBasis:
    """All classical configurations of one (L, s, sz) magnetization sector.

    `configs` rows are int8 value vectors in descending lexicographic
    order; `index_of` inverts the row order exactly.  Immutable after
    construction, safe to share across workers.
    """

    L: int
    s: float
    sz: float
    configs: np.ndarray
    _index: dict = field(repr=False)

    @property
    def dim(self):
        return self.configs.shape[0]

    @property
    def n_pairs(self):
        return self.L // 2

    @property
    def d(self):
        """Local Hilbert-space dimension."""
        return int(2 * self.s + 1)

    def index_of(self, config):
        """Basis index of a classical configuration; KeyError if outside the sector."""
        key = np.asarray(config, dtype=np.int8).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(
                f"configuration {list(np.asarray(config))} is not in the sz={self.sz} sector"
            ) from None


def sector_dimension(L, s, sz):
    """Number of configurations in a sector, counted by convolution (no enumeration)."""
    vals = local_values(s)
    target = round(2 * sz) if s == 0.5 else round(sz)
    counts = {0: 1}
    for _ in range(L):
        nxt = {}
        for tot, c in counts.items():
            for v in vals:
                nxt[tot + v] = nxt.get(tot + v, 0) + c
        counts = nxt
    return counts.get(target, 0)


def enumerate_sector(L, s, sz):
    """Build the SectorBasis of all length-L configurations with magnetization sz.

    Raises ValueError for odd L or an unattainable sz (an empty sector is
    an error, never an empty basis).
    """
    if L <= 0 or L % 2:
        raise ValueError(f"chain length must be even and positive, got {L}")
    vals = local_values(s)
    if s == 0.5:
        keep = lambda c: sum(c) == 2 * sz
    else:
        keep = lambda c: sum(c) == sz
    rows = [c for c in itertools.product(vals, repeat=L) if keep(c)]
    if not rows:
        raise ValueError(f"no configurations with sz={sz} for L={L}, s={s}")
    configs = np.array(rows, dtype=np.int8)
    index = {configs[i].tobytes(): i for i in range(configs.shape[0])}
    return SectorBasis(L=L, s=float(s), sz=float(sz), configs=configs, _index=index)


def z_diagonal(basis, site):
    """Diagonal of the local z operator at `site` (sigma^z for s=1/2, S^z for s=1)."""
    if not 0 <= site < basis.L:
        raise ValueError(f"site {site} out of range for L={basis.L}")
    return basis.configs[:, site].astype(np.float64)


def hopping_matrix(basis, bond):
    """Dense XX+YY exchange on bond (bond, bond+1) with unit coefficient.

    Pauli form for s=1/2 (matrix element 2 between the two unaligned pair
    states), spin-operator form for s=1.  Real symmetric and sector
    conserving by construction.
    """
    if not 0 <= bond < basis.L - 1:
        raise ValueError(f"bond {bond} out of range for L={basis.L}")
    k, q = bond, bond + 1
    out = np.zeros((basis.dim, basis.dim))
    cfg = basis.configs
    if basis.s == 0.5:
        for n in range(basis.dim):
            if cfg[n, k] == cfg[n, q]:
                continue
            target = cfg[n].copy()
            target[k], target[q] = target[q], target[k]
            out[basis.index_of(target), n] = 2.0
    else:
        # 0.5*(S+ S- + S- S+); for s=1 every allowed one-step move has amplitude 1
        for n in range(basis.dim):
            a, b = int(cfg[n, k]), int(cfg[n, q])
            for da, db in ((-1, 1), (1, -1)):
                if not (-1 <= a + da <= 1 and -1 <= b + db <= 1):
                    continue
                amp = 0.5 * np.sqrt(2.0 - a * (a + da)) * np.sqrt(2.0 - b * (b + db))
                target = cfg[n].copy()
                target[k] += da
                target[q] += db
                out[basis.index_of(target), n] = amp
    return out


def pair_swap_permutation(basis, pair):
    """Index permutation of the swap of sites (2*pair, 2*pair+1); an involution."""
    if not 0 <= pair < basis.n_pairs:
        raise ValueError(f"pair {pair} out of range for L={basis.L}")
    k = 2 * pair
    perm = np.empty(basis.dim, dtype=np.intp)
    for n in range(basis.dim):
        target = basis.configs[n].copy()
        target[k], target[k + 1] = target[k + 1], target[k]
        perm[n] = basis.index_of(target)
    return perm


def pair_swap_matrix(basis, pair):
    """Dense permutation matrix exchanging the two site values of one swap pair."""
    perm = pair_swap_permutation(basis, pair)
    out = np.zeros((basis.dim, basis.dim))
    out[perm, np.arange(basis.dim)] = 1.0
    return out


def swap_permutation(basis):
    """Index permutation of the global pairwise swap (all pairs at once)."""
    perm = np.empty(basis.dim, dtype=np.intp)
    for n in range(basis.dim):
        perm[n] = basis.index_of(swapped_config(basis.configs[n]))
    return perm
