"""Grid-based bounded nondominated archives and a plain Pareto archive.

The bounded archive keeps at most one solution per epsilon box and no
member dominated under its acceptance relation. Acceptance is the
two-level grid scheme: a member dominates a candidate when it
Pareto-dominates it outright, or when the candidate's box corner lies
inside the member's corner-anchored cone (different boxes only). With
the cone fully open (kappa = 0) the corner test reduces to box-level
dominance, which is the classic additive-epsilon archive; larger kappa
narrows the cone so that more neighboring boxes coexist.

Insertion follows one four-branch update:

1. candidate dominated by a member          -> rejected
2. candidate shares a box with a member     -> replace the incumbent if
   the candidate Pareto-dominates it or sits closer to the box corner
   (ties keep the incumbent), evicting every dominated member as well;
   otherwise rejected
3. candidate dominates members              -> evict them, insert
4. otherwise                                -> insert

Branch order resolves the case where a candidate both shares a box and
dominates members elsewhere: the box branch wins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import Solution
from .dominance import ConeMatrix, box_key, build_cone_matrix, epsilon_vector

ACCEPTED = "accepted"
REJECTED = "rejected"
REPLACED = "replaced"


@dataclass(frozen=True)
class InsertionOutcome:
    status: str
    evicted: tuple[Solution, ...] = ()

    def __bool__(self) -> bool:
        return self.status != REJECTED


class BoundedArchive:
    """Bounded nondominated store with cone-epsilon or epsilon acceptance.

    Construct with a ConeMatrix for cone-epsilon acceptance or a bare
    epsilon vector for the additive-epsilon rule (internally the fully
    open kappa = 0 cone, which is exactly box-level dominance).
    """

    def __init__(self, acceptance, sense=None):
        if isinstance(acceptance, ConeMatrix):
            self.cone = acceptance
            self._is_cone = True
        else:
            self.cone = build_cone_matrix(epsilon_vector(acceptance), 0.0)
            self._is_cone = False
        self.eps = self.cone.eps
        self.sense = sense
        self.members: list[Solution] = []
        self._keys: list[tuple] = []
        self._boxes: dict[tuple, int] = {}
        m = self.eps.shape[0]
        self._buf = np.empty((64, m), dtype=np.float64)
        self._corners = np.empty((64, m), dtype=np.float64)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def acceptance(self) -> str:
        return "cone-epsilon" if self._is_cone else "epsilon"

    def objectives(self) -> np.ndarray:
        """Penalized objective matrix of the current members (copy)."""
        return self._buf[: len(self.members)].copy()

    def _corner(self, key: tuple) -> np.ndarray:
        return np.ascontiguousarray(self.eps * np.asarray(key, dtype=np.float64))

    def _append(self, sol: Solution, fy, corner, key) -> None:
        n = len(self.members)
        if n == self._buf.shape[0]:
            grown = np.empty((2 * n, self._buf.shape[1]), dtype=np.float64)
            grown[:n] = self._buf
            self._buf = grown
            grown_c = np.empty((2 * n, self._corners.shape[1]), dtype=np.float64)
            grown_c[:n] = self._corners
            self._corners = grown_c
        self._buf[n] = fy
        self._corners[n] = corner
        self.members.append(sol)
        self._keys.append(key)
        self._boxes[key] = n

    def _remove(self, indices) -> list[Solution]:
        removed = []
        for i in sorted(set(indices), reverse=True):
            removed.append(self.members[i])
            del self._boxes[self._keys[i]]
            last = len(self.members) - 1
            if i != last:
                self.members[i] = self.members[last]
                self._keys[i] = self._keys[last]
                self._buf[i] = self._buf[last]
                self._corners[i] = self._corners[last]
                self._boxes[self._keys[i]] = i
            self.members.pop()
            self._keys.pop()
        return removed

    def insert(self, sol: Solution) -> InsertionOutcome:
        fy = np.ascontiguousarray(sol.penalized_f, dtype=np.float64)
        key = box_key(fy, self.eps, self.sense)
        corner = self._corner(key)
        n = len(self.members)
        any_dom, mask = _kernels.scan_archive(
            self._buf[:n], self._corners[:n], fy, corner, self.cone.inv, self.cone.tol
        )
        if any_dom:
            return InsertionOutcome(REJECTED)

        incumbent_idx = self._boxes.get(key)
        if incumbent_idx is not None:
            inc_f = self._buf[incumbent_idx]
            d_new = float(np.sum((fy - corner) ** 2))
            d_inc = float(np.sum((inc_f - corner) ** 2))
            if _kernels.dominates(fy, inc_f) or d_new < d_inc:
                out = set(np.nonzero(mask)[0].tolist())
                out.add(incumbent_idx)
                evicted = self._remove(out)
                self._append(sol, fy, corner, key)
                return InsertionOutcome(REPLACED, tuple(evicted))
            return InsertionOutcome(REJECTED)

        dominated = np.nonzero(mask)[0]
        if dominated.size:
            evicted = self._remove(dominated.tolist())
            self._append(sol, fy, corner, key)
            return InsertionOutcome(REPLACED, tuple(evicted))

        self._append(sol, fy, corner, key)
        return InsertionOutcome(ACCEPTED)

    def check_invariants(self) -> None:
        """Raise AssertionError on any violated archive invariant."""
        n = len(self.members)
        assert len(self._boxes) == n, "duplicate box indices"
        F = self._buf[:n]
        C = self._corners[:n]
        le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
        lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
        lam = np.einsum("ij,abj->abi", self.cone.inv, C[None, :, :] - C[:, None, :])
        diff = np.any(C[:, None, :] != C[None, :, :], axis=2)
        dom = (le & lt) | (diff & np.all(lam >= -self.cone.tol, axis=2))
        np.fill_diagonal(dom, False)
        assert not dom.any(), "archive members dominate one another"


class ParetoArchive:
    """Unbounded archive of mutually Pareto-nondominated solutions."""

    def __init__(self, m: int):
        self.members: list[Solution] = []
        self._buf = np.empty((64, m), dtype=np.float64)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def objectives(self) -> np.ndarray:
        return self._buf[: len(self.members)].copy()

    def insert(self, sol: Solution) -> InsertionOutcome:
        fy = np.ascontiguousarray(sol.penalized_f, dtype=np.float64)
        F = self._buf[: len(self.members)]
        any_dom, mask = _kernels.scan_pareto(F, fy)
        if any_dom:
            return InsertionOutcome(REJECTED)
        evicted = []
        dominated = np.nonzero(mask)[0]
        if dominated.size:
            for i in sorted(dominated.tolist(), reverse=True):
                evicted.append(self.members[i])
                last = len(self.members) - 1
                if i != last:
                    self.members[i] = self.members[last]
                    self._buf[i] = self._buf[last]
                self.members.pop()
        n = len(self.members)
        if n == self._buf.shape[0]:
            grown = np.empty((2 * n, self._buf.shape[1]), dtype=np.float64)
            grown[:n] = self._buf
            self._buf = grown
        self._buf[n] = fy
        self.members.append(sol)
        if evicted:
            return InsertionOutcome(REPLACED, tuple(evicted))
        return InsertionOutcome(ACCEPTED)


def cone_archive_insert(archive: BoundedArchive, sol: Solution) -> InsertionOutcome:
    if not archive._is_cone:
        raise ValueError("archive does not use cone-epsilon acceptance")
    return archive.insert(sol)


def eps_archive_insert(archive: BoundedArchive, sol: Solution) -> InsertionOutcome:
    if archive._is_cone:
        raise ValueError("archive does not use epsilon acceptance")
    return archive.insert(sol)


def pareto_archive_insert(archive: ParetoArchive, sol: Solution) -> InsertionOutcome:
    return archive.insert(sol)
