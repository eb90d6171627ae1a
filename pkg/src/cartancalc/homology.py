"""Degree-wise chain-complex machinery over Q.

Everything is exact: matrices are sparse columns of ``Fraction`` entries and
elimination is plain Gaussian reduction over Q with partial pivoting on the
entry of smallest numerator*denominator bit-length (ties broken by row
index).  Representative cocycles are chosen deterministically as echelon
pivot completions of the image inside the kernel, so fixtures are stable
across runs and platforms.

A complex is any object with

    basis(n)        -> ordered tuple of basis objects in degree n
    differential(x) -> list of (Fraction, basis object) pairs in degree n+1
    label(x)        -> short string used in matrix bases and reports

Degree-wise bases must be complete; differentials preserve degree, so every
reported cohomology group is exact, never an approximation.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import HomogeneityError, NotACocycleError, NotAComplexError

Vec = Dict[int, Fraction]  # sparse column: row index -> nonzero entry


def vec_add(a: Vec, b: Vec, coeff: Fraction) -> Vec:
    """a + coeff * b, dropping zeros."""
    out = dict(a)
    for i, x in b.items():
        s = out.get(i, Fraction(0)) + coeff * x
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def vec_scale(a: Vec, c: Fraction) -> Vec:
    return {i: c * x for i, x in a.items()} if c else {}


def _pivot_weight(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


class ColumnSpace:
    """Reduced column-echelon span with coordinate tracking.

    Columns are inserted one at a time.  Each pivot stores the reduced
    column and its expression in terms of the inserted columns (by tag), so
    membership tests double as solvers.
    """

    def __init__(self):
        self.pivot_rows: List[int] = []
        self.columns: List[Vec] = []
        self.combos: List[Dict[object, Fraction]] = []

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def _reduce(self, vec: Vec, combo: Dict[object, Fraction]):
        vec = dict(vec)
        combo = dict(combo)
        for k, row in enumerate(self.pivot_rows):
            c = vec.get(row)
            if c:
                vec = vec_add(vec, self.columns[k], -c)
                for tag, x in self.combos[k].items():
                    s = combo.get(tag, Fraction(0)) - c * x
                    if s:
                        combo[tag] = s
                    else:
                        combo.pop(tag, None)
        return vec, combo

    def insert(self, vec: Vec, tag: object):
        """Insert a column.  Returns None if it extended the span, else the
        coordinates expressing it in terms of previously inserted columns."""
        residual, combo = self._reduce(vec, {tag: Fraction(1)})
        if not residual:
            del combo[tag]
            return {t: -c for t, c in combo.items()}
        row = min(residual, key=lambda i: (_pivot_weight(residual[i]), i))
        inv = Fraction(1) / residual[row]
        residual = vec_scale(residual, inv)
        combo = {t: inv * c for t, c in combo.items()}
        # full reduction: clear the new pivot row from existing columns
        for k in range(len(self.columns)):
            c = self.columns[k].get(row)
            if c:
                self.columns[k] = vec_add(self.columns[k], residual, -c)
                for t, x in combo.items():
                    s = self.combos[k].get(t, Fraction(0)) - c * x
                    if s:
                        self.combos[k][t] = s
                    else:
                        self.combos[k].pop(t, None)
        self.pivot_rows.append(row)
        self.columns.append(residual)
        self.combos.append(combo)
        return None

    def solve(self, vec: Vec):
        """Coordinates of vec in terms of inserted columns, or None."""
        residual, combo = self._reduce(vec, {})
        if residual:
            return None
        return {t: -c for t, c in combo.items()}

    def reduced_column(self, vec: Vec) -> Vec:
        return self._reduce(vec, {})[0]


@dataclass
class Slice:
    """One degree slice of a linear map; columns are images of the source
    basis vectors in target-basis coordinates."""

    degree: int
    source_basis: tuple
    target_basis: tuple
    source_labels: Tuple[str, ...]
    target_labels: Tuple[str, ...]
    columns: Tuple[Vec, ...]

    def apply(self, vec: Vec) -> Vec:
        out: Vec = {}
        for j, c in vec.items():
            out = vec_add(out, self.columns[j], c)
        return out

    def rank(self) -> int:
        space = ColumnSpace()
        for j, col in enumerate(self.columns):
            space.insert(col, j)
        return space.rank

    def kernel(self) -> List[Vec]:
        """Kernel basis (vectors over source indices), deterministic."""
        space = ColumnSpace()
        out = []
        for j, col in enumerate(self.columns):
            combo = space.insert(col, j)
            if combo is not None:
                # insert returned col_j = sum combo[t] col_t
                kv = {t: -c for t, c in combo.items()}
                kv[j] = Fraction(1)
                out.append(kv)
        return out


def assemble_slice(complex_, n: int) -> Slice:
    """Matrix of the differential from degree n to degree n+1."""
    source = complex_.basis(n)
    target = complex_.basis(n + 1)
    tindex = {obj: i for i, obj in enumerate(target)}
    columns = []
    for obj in source:
        col: Vec = {}
        for coeff, img in complex_.differential(obj):
            if not coeff:
                continue
            i = tindex.get(img)
            if i is None:
                raise HomogeneityError(
                    f"image of {complex_.label(obj)} contains {complex_.label(img)}"
                    f" outside degree {n + 1}; map is not degree-homogeneous"
                )
            s = col.get(i, Fraction(0)) + coeff
            if s:
                col[i] = s
            else:
                col.pop(i, None)
        columns.append(col)
    return Slice(
        degree=n,
        source_basis=source,
        target_basis=target,
        source_labels=tuple(complex_.label(o) for o in source),
        target_labels=tuple(complex_.label(o) for o in target),
        columns=tuple(columns),
    )


@dataclass
class CohomologySpace:
    """ker(d_out)/im(d_in) with chosen representatives and a reduction map."""

    degree: int
    basis: tuple
    labels: Tuple[str, ...]
    dimension: int
    representatives: Tuple[Vec, ...]
    _image: ColumnSpace = field(repr=False)
    _d_out: Slice = field(repr=False)

    def is_cocycle(self, vec: Vec) -> bool:
        return not self._d_out.apply(vec)

    def class_of(self, vec: Vec) -> Tuple[Fraction, ...]:
        """Coordinates of [vec] in the representative basis; all zero iff
        vec is a coboundary.  Raises NotACocycleError on non-cocycles."""
        image = self._d_out.apply(vec)
        if image:
            raise NotACocycleError(
                f"element is not closed in degree {self.degree}: d(v) != 0"
            )
        combo = self._image.solve(vec)
        if combo is None:  # cannot happen for genuine cocycles
            raise NotACocycleError("cocycle not in span of kernel; internal error")
        return tuple(
            combo.get(("rep", i), Fraction(0)) for i in range(self.dimension)
        )

    def is_exact(self, vec: Vec) -> bool:
        return all(c == 0 for c in self.class_of(vec))


def cohomology(d_in: Slice, d_out: Slice) -> CohomologySpace:
    """Cohomology at the shared degree of two consecutive slices."""
    if d_in.target_labels != d_out.source_labels:
        raise NotAComplexError("slices are not consecutive: bases differ")
    # check d_out . d_in = 0, with a witness on failure
    for j, col in enumerate(d_in.columns):
        composite = d_out.apply(col)
        if composite:
            raise NotAComplexError(
                f"composite differential nonzero on {d_in.source_labels[j]}",
                witness=(d_in.source_basis[j], composite),
            )
    space = ColumnSpace()
    for j, col in enumerate(d_in.columns):
        space.insert(col, ("im", j))
    rank_in = space.rank
    kernel = d_out.kernel()
    reps: List[Vec] = []
    for kv in kernel:
        residual = space.reduced_column(kv)
        if not residual:
            continue
        row = min(residual, key=lambda i: (_pivot_weight(residual[i]), i))
        residual = vec_scale(residual, Fraction(1) / residual[row])
        # insert the reduced, normalized cocycle itself so that class_of
        # sends the i-th representative to the i-th unit vector
        space.insert(residual, ("rep", len(reps)))
        reps.append(residual)
    dim = len(reps)
    if dim != len(kernel) - rank_in:
        raise NotAComplexError("image does not lie inside the kernel")
    return CohomologySpace(
        degree=d_out.degree,
        basis=d_out.source_basis,
        labels=d_out.source_labels,
        dimension=dim,
        representatives=tuple(reps),
        _image=space,
        _d_out=d_out,
    )


class Complex:
    """Base class for degree-wise complexes; subclasses fill in basis(),
    differential() and label(), and inherit vector plumbing."""

    def basis(self, n: int):  # pragma: no cover - abstract
        raise NotImplementedError

    def differential(self, obj):  # pragma: no cover - abstract
        raise NotImplementedError

    def label(self, obj) -> str:
        return str(obj)

    # -- plumbing ---------------------------------------------------------

    def index(self, n: int) -> dict:
        return {obj: i for i, obj in enumerate(self.basis(n))}

    def slice_at(self, n: int) -> Slice:
        cache = getattr(self, "_slice_cache", None)
        if cache is None:
            cache = self._slice_cache = {}
        if n not in cache:
            cache[n] = assemble_slice(self, n)
        return cache[n]

    def cohomology(self, n: int) -> CohomologySpace:
        cache = getattr(self, "_coh_cache", None)
        if cache is None:
            cache = self._coh_cache = {}
        if n not in cache:
            cache[n] = cohomology(self.slice_at(n - 1), self.slice_at(n))
        return cache[n]

    def vector(self, n: int, combination) -> Vec:
        """Vector of a formal [(coeff, obj), ...] combination in degree n."""
        idx = self.index(n)
        out: Vec = {}
        for coeff, obj in combination:
            if not coeff:
                continue
            i = idx.get(obj)
            if i is None:
                raise HomogeneityError(
                    f"{self.label(obj)} is not a degree-{n} basis element"
                )
            s = out.get(i, Fraction(0)) + coeff
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return out


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CARTAN_THREADS", "1")))
    except ValueError:
        return 1


def degree_map(fn: Callable[[int], object], degrees: Sequence[int]) -> list:
    """Apply fn to each degree, optionally in parallel (CARTAN_THREADS).

    Safe because complexes are immutable once built; results are returned
    in input order regardless of completion order.
    """
    n = worker_count()
    degrees = list(degrees)
    if n <= 1 or len(degrees) <= 1:
        return [fn(d) for d in degrees]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, degrees))
