"""Truncated emitter+loop Hilbert space: indexing, state container helpers.

Basis layout is sector-major: the photon sectors are ordered
[vacuum, one(0..N-1), two(j,k) lexicographic with j < k] and within each
sector the emitter state is the fastest axis (g=0, e=1).  At most one photon
per bin and at most two photons total are kept; everything that would leave
this space is truncated.
"""
from __future__ import annotations

import numpy as np

GROUND, EXCITED = 0, 1

VACUUM = "vacuum"
ONE = "one"
TWO = "two"


class BasisError(IndexError):
    """Raised for out-of-range bin indices or malformed sector labels."""


class ZeroNormError(FloatingPointError):
    """Raised when a state that must be normalizable has (numerically) zero norm."""


def dimension(n_bins: int) -> int:
    """Total dimension 2*(1 + N + N*(N-1)/2) of the truncated space."""
    n = int(n_bins)
    return 2 * (1 + n + n * (n - 1) // 2)


class LoopBasis:
    """Index bookkeeping for one choice of bin count N.

    Precomputes every structural map the stepper needs: the flat index of each
    (emitter, sector) pair, which flats hold a photon in a given bin, the
    bin-0 annihilation pairing and the one-step bin relabeling.
    """

    def __init__(self, n_bins: int):
        if n_bins < 2:
            raise BasisError(f"n_bins must be >= 2, got {n_bins}")
        self.n_bins = int(n_bins)
        n = self.n_bins
        self.n_pairs = n * (n - 1) // 2
        self.n_sectors = 1 + n + self.n_pairs
        self.dim = 2 * self.n_sectors

        # sector slices of the flat index space (contiguous by construction)
        self.vacuum_slice = slice(0, 2)
        self.one_slice = slice(2, 2 + 2 * n)
        self.two_slice = slice(2 + 2 * n, self.dim)

        self._build_bin0_maps()
        self._build_shift_map()

    # ---- sector indexing -------------------------------------------------

    def pair_index(self, j: int, k: int) -> int:
        """Lexicographic index of the ordered pair (j, k), j < k."""
        n = self.n_bins
        if not (0 <= j < k < n):
            raise BasisError(f"two-photon bins must satisfy 0 <= j < k < N, got ({j}, {k})")
        return j * n - j * (j + 1) // 2 + (k - j - 1)

    def sector_index(self, sector) -> int:
        kind = sector[0]
        if kind == VACUUM:
            return 0
        if kind == ONE:
            j = sector[1]
            if not (0 <= j < self.n_bins):
                raise BasisError(f"bin index {j} out of range for N={self.n_bins}")
            return 1 + j
        if kind == TWO:
            return 1 + self.n_bins + self.pair_index(sector[1], sector[2])
        raise BasisError(f"unknown sector {sector!r}")

    def index_of(self, tls: int, sector) -> int:
        """Flat index of basis state |tls> (x) |sector>."""
        if tls not in (GROUND, EXCITED):
            raise BasisError(f"tls must be {GROUND} (g) or {EXCITED} (e), got {tls}")
        return 2 * self.sector_index(sector) + tls

    def state_of(self, index: int):
        """Inverse of index_of: (tls, sector) for a flat index."""
        if not (0 <= index < self.dim):
            raise BasisError(f"flat index {index} out of range for dim={self.dim}")
        tls = index % 2
        s = index // 2
        if s == 0:
            return tls, (VACUUM,)
        s -= 1
        if s < self.n_bins:
            return tls, (ONE, s)
        p = s - self.n_bins
        # invert the pair index by scanning rows of the triangle
        j = 0
        row = self.n_bins - 1
        while p >= row:
            p -= row
            row -= 1
            j += 1
        return tls, (TWO, j, j + 1 + p)

    def sectors(self):
        """All sector labels in index order."""
        out = [(VACUUM,)]
        out += [(ONE, j) for j in range(self.n_bins)]
        out += [(TWO, j, k) for j in range(self.n_bins) for k in range(j + 1, self.n_bins)]
        return out

    # ---- structural maps -------------------------------------------------

    def bin_flats(self, j: int) -> np.ndarray:
        """Flat indices of all basis states holding a photon in bin j."""
        if not (0 <= j < self.n_bins):
            raise BasisError(f"bin index {j} out of range for N={self.n_bins}")
        secs = [1 + j]
        secs += [1 + self.n_bins + self.pair_index(min(j, k), max(j, k))
                 for k in range(self.n_bins) if k != j]
        flats = []
        for s in secs:
            flats += [2 * s, 2 * s + 1]
        return np.asarray(sorted(flats), dtype=np.intp)

    def _build_bin0_maps(self):
        n = self.n_bins
        # states with a photon in bin 0, paired with their image under the
        # bin-0 annihilator: one(0)->vacuum, two(0,k)->one(k)
        src_secs = [1 + 0] + [1 + n + self.pair_index(0, k) for k in range(1, n)]
        dst_secs = [0] + [1 + k for k in range(1, n)]
        src, dst = [], []
        for s, d in zip(src_secs, dst_secs):
            src += [2 * s, 2 * s + 1]
            dst += [2 * d, 2 * d + 1]
        self.annihilate0_src = np.asarray(src, dtype=np.intp)
        self.annihilate0_dst = np.asarray(dst, dtype=np.intp)
        self.occupied0_flats = self.annihilate0_src

    def _build_shift_map(self):
        """One-step relabeling one(j)->one(j-1), two(j,k)->two(j-1,k-1).

        Encoded as a gather: new[i] = old[shift_src[i]], with shift_src < 0 on
        the freshly injected empty-bin configurations (one(N-1), two(.,N-1)),
        which are zero-filled.  States with a photon in bin 0 appear as no
        destination's source; they must already be empty when shifting.
        """
        n = self.n_bins
        src_sector = np.full(self.n_sectors, -1, dtype=np.intp)
        src_sector[0] = 0
        for j in range(n - 1):
            src_sector[1 + j] = 1 + (j + 1)
        for j in range(n - 1):
            for k in range(j + 1, n - 1):
                src_sector[1 + n + self.pair_index(j, k)] = \
                    1 + n + self.pair_index(j + 1, k + 1)
        shift_src = np.empty(self.dim, dtype=np.intp)
        for s in range(self.n_sectors):
            if src_sector[s] < 0:
                shift_src[2 * s] = -1
                shift_src[2 * s + 1] = -1
            else:
                shift_src[2 * s] = 2 * src_sector[s]
                shift_src[2 * s + 1] = 2 * src_sector[s] + 1
        self.shift_src = shift_src
        self.shift_fresh = np.nonzero(shift_src < 0)[0]
        self.shift_src_clipped = np.where(shift_src < 0, 0, shift_src)

    # ---- state construction / normalization -------------------------------

    def initial_state(self) -> np.ndarray:
        """Ground emitter, empty loop: unit amplitude on flat index 0."""
        psi = np.zeros(self.dim, dtype=np.complex128)
        psi[0] = 1.0
        return psi

    def basis_state(self, tls: int, sector) -> np.ndarray:
        psi = np.zeros(self.dim, dtype=np.complex128)
        psi[self.index_of(tls, sector)] = 1.0
        return psi


def norm(state: np.ndarray) -> float:
    """Euclidean norm of a state vector (or per-column for a batch)."""
    if state.ndim == 1:
        return float(np.linalg.norm(state))
    return np.sqrt(np.einsum("ib,ib->b", state.real, state.real)
                   + np.einsum("ib,ib->b", state.imag, state.imag))


def normalize(state: np.ndarray, min_norm: float = 1e-14) -> np.ndarray:
    """Return state scaled to unit norm; direction unchanged."""
    if not np.all(np.isfinite(state.view(np.float64))):
        raise ZeroNormError("state contains non-finite amplitudes")
    n = norm(state)
    if np.any(np.asarray(n) <= min_norm):
        raise ZeroNormError(
            "cannot normalize a (numerically) zero state; "
            "a projection produced an impossible measurement branch"
        )
    return state / n


def initial_state(params) -> np.ndarray:
    """Initial state for a run: ground emitter, all bins empty."""
    return LoopBasis(params.n_bins).initial_state()
