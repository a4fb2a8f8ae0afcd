"""Exact sparse linear algebra over Q, F_p and Z.

Matrices store exact scalars (``int`` or ``Fraction``; residues in
``[0, p)`` over F_p). Ranks use a deterministic pivot rule: the active row
with the fewest nonzeros, ties broken by the lowest row index, pivoting on
that row's lowest column.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, TextIO

import gmpy2
import sympy


class UnsupportedRing(ValueError):
    pass


class NotAComplex(ValueError):
    def __init__(self, message: str, witness: Optional[dict] = None):
        self.witness = witness
        super().__init__(message)


class NotAChainMap(ValueError):
    def __init__(self, message: str, witness: Optional[dict] = None):
        self.witness = witness
        super().__init__(message)


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q", "Fp" or "Z"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Q", "Fp", "Z"):
            raise ValueError(f"unknown coefficient ring {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not sympy.isprime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p}")
        elif self.p is not None:
            raise ValueError(f"{self.kind} takes no modulus")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q")

    @classmethod
    def integers(cls) -> "FieldSpec":
        return cls("Z")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accept ``Q``, ``Z``, ``F5``, ``Fp5`` or ``Fp:5``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ"):
            return cls.rationals()
        if t.upper() in ("Z", "ZZ"):
            return cls.integers()
        if t[:1] in ("F", "f"):
            rest = t[1:].lstrip("pP").lstrip(":=")
            if rest.isdigit():
                return cls.prime(int(rest))
        raise ValueError(f"cannot parse coefficient ring {text!r}")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.kind == "Fp" else self.kind

    def __str__(self) -> str:
        return self.name

    def coerce(self, x):
        if self.kind == "Fp":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return x


Q = FieldSpec.rationals()
Z = FieldSpec.integers()


class SparseMatrix:
    """Immutable sparse matrix, stored column-major as ``{row: value}`` per column."""

    __slots__ = ("rows", "cols", "field", "_columns")

    def __init__(self, rows: int, cols: int, entries: Iterable[tuple[int, int, object]] = (),
                 field: FieldSpec = Q):
        columns: list[dict] = [dict() for _ in range(cols)]
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = field.coerce(v)
            if v == 0:
                raise ValueError(f"stored zero at ({r}, {c})")
            if r in columns[c]:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            columns[c][r] = v
        self.rows = rows
        self.cols = cols
        self.field = field
        self._columns = columns

    @classmethod
    def _from_columns(cls, rows: int, columns: list[dict], field: FieldSpec) -> "SparseMatrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = len(columns)
        m.field = field
        m._columns = columns
        return m

    @classmethod
    def accumulate(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, object]],
                   field: FieldSpec = Q) -> "SparseMatrix":
        """Build a matrix summing repeated (row, col) contributions; zeros are dropped."""
        columns: list[dict] = [dict() for _ in range(cols)]
        for r, c, v in entries:
            col = columns[c]
            col[r] = col.get(r, 0) + v
        for c, col in enumerate(columns):
            clean = {}
            for r, v in col.items():
                if not 0 <= r < rows:
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = field.coerce(v)
                if v != 0:
                    clean[r] = v
            columns[c] = clean
        return cls._from_columns(rows, columns, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = Q) -> "SparseMatrix":
        return cls._from_columns(rows, [dict() for _ in range(cols)], field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = Q) -> "SparseMatrix":
        return cls._from_columns(n, [{i: 1} for i in range(n)], field)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: FieldSpec = Q) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls.accumulate(nr, nc, ((i, j, v) for i, row in enumerate(rows)
                                       for j, v in enumerate(row) if v != 0), field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def column(self, j: int) -> dict:
        return dict(self._columns[j])

    def entries(self) -> list[tuple[int, int, object]]:
        """All stored entries sorted by (row, col)."""
        out = [(r, c, v) for c, col in enumerate(self._columns) for r, v in col.items()]
        out.sort(key=lambda e: (e[0], e[1]))
        return out

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self._columns):
            for r, v in col.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not any(self._columns)

    def over(self, field: FieldSpec) -> "SparseMatrix":
        if field == self.field:
            return self
        return SparseMatrix.accumulate(self.rows, self.cols, self._iter(), field)

    def _iter(self) -> Iterator[tuple[int, int, object]]:
        for c, col in enumerate(self._columns):
            for r, v in col.items():
                yield r, c, v

    def transpose(self) -> "SparseMatrix":
        cols: list[dict] = [dict() for _ in range(self.rows)]
        for c, col in enumerate(self._columns):
            for r, v in col.items():
                cols[r][c] = v
        return SparseMatrix._from_columns(self.cols, cols, self.field)

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def _check_field(self, other: "SparseMatrix"):
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        mine = self._columns
        f = self.field
        out = []
        for ocol in other._columns:
            acc: dict = {}
            for k, b in ocol.items():
                for r, a in mine[k].items():
                    acc[r] = acc.get(r, 0) + a * b
            out.append(_clean(acc, f))
        return SparseMatrix._from_columns(self.rows, out, f)

    def apply(self, vec: dict) -> dict:
        """Multiply by a sparse column vector ``{index: value}``."""
        acc: dict = {}
        for k, b in vec.items():
            for r, a in self._columns[k].items():
                acc[r] = acc.get(r, 0) + a * b
        return _clean(acc, self.field)

    def _combine(self, other: "SparseMatrix", s) -> "SparseMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self._columns, other._columns):
            acc = dict(a)
            for r, v in b.items():
                acc[r] = acc.get(r, 0) + s * v
            out.append(_clean(acc, self.field))
        return SparseMatrix._from_columns(self.rows, out, self.field)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -1)

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix._from_columns(
            self.rows, [_clean({r: c * v for r, v in col.items()}, self.field) for col in self._columns],
            self.field)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and self._columns == other._columns)

    def __hash__(self):
        return hash((self.shape, self.field, tuple(self.entries())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, {self.field})"

    def with_entry(self, r: int, c: int, value) -> "SparseMatrix":
        """Copy with one entry replaced (used to build corrupted negative controls)."""
        cols = [dict(col) for col in self._columns]
        value = self.field.coerce(value)
        if value == 0:
            cols[c].pop(r, None)
        else:
            cols[c][r] = value
        return SparseMatrix._from_columns(self.rows, cols, self.field)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "SparseMatrix":
        pos = {r: i for i, r in enumerate(row_idx)}
        cols = []
        for c in col_idx:
            cols.append({pos[r]: v for r, v in self._columns[c].items() if r in pos})
        return SparseMatrix._from_columns(len(row_idx), cols, self.field)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseMatrix":
        """Entry (r, c) moves to (row_perm[r], col_perm[c])."""
        cols: list[dict] = [dict() for _ in range(self.cols)]
        for c, col in enumerate(self._columns):
            cols[col_perm[c]] = {row_perm[r]: v for r, v in col.items()}
        return SparseMatrix._from_columns(self.rows, cols, self.field)

    def is_permutation_matrix(self) -> bool:
        if self.rows != self.cols:
            return False
        seen = set()
        for col in self._columns:
            if len(col) != 1:
                return False
            (r, v), = col.items()
            if v != 1 or r in seen:
                return False
            seen.add(r)
        return True

    def first_nonzero_column(self) -> Optional[int]:
        for c, col in enumerate(self._columns):
            if col:
                return c
        return None

    def dump(self, out: TextIO) -> None:
        """Coordinate text: header ``rows cols nnz`` then ``i j value`` lines, 0-based."""
        ents = self.entries()
        out.write(f"{self.rows} {self.cols} {len(ents)}\n")
        for r, c, v in ents:
            out.write(f"{r} {c} {v}\n")

    def dumps(self) -> str:
        import io
        buf = io.StringIO()
        self.dump(buf)
        return buf.getvalue()

    @classmethod
    def loads(cls, text: str, field: FieldSpec = Q) -> "SparseMatrix":
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        rows, cols, nnz = (int(x) for x in lines[0])
        if len(lines) - 1 != nnz:
            raise ValueError(f"header declares {nnz} entries, found {len(lines) - 1}")
        ents = [(int(i), int(j), Fraction(v)) for i, j, v in lines[1:]]
        return cls(rows, cols, ents, field)


def _clean(acc: dict, field: FieldSpec) -> dict:
    if field.kind == "Fp":
        p = field.p
        return {r: v % p for r, v in acc.items() if v % p}
    return {r: field.coerce(v) for r, v in acc.items() if v != 0}


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple[int, ...]
    rank: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


@dataclass(frozen=True)
class HomologySummary:
    degree: int
    dimension: int
    torsion: tuple[int, ...] = ()
    reliable: bool = True


# ---------------------------------------------------------------- rank


def _rows_of(M: SparseMatrix) -> list[dict]:
    rows: list[dict] = [dict() for _ in range(M.rows)]
    for c, col in enumerate(M._columns):
        for r, v in col.items():
            rows[r][c] = v
    return rows


def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    if den == 1:
        return {c: int(v) for c, v in row.items()}
    return {c: int(v * den) for c, v in row.items()}


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def rank(M: SparseMatrix, F: Optional[FieldSpec] = None) -> int:
    """Exact rank over Q (fraction-free) or F_p."""
    F = F or M.field
    if not F.is_field:
        raise UnsupportedRing("rank over Z is not defined here; use smith_normal_form")
    if F.kind == "Fp":
        M = M.over(F)
        p = F.p
    else:
        p = None
    rows = _rows_of(M)
    if p is None:
        rows = [_integer_row(r) for r in rows]

    col_rows: dict[int, set] = {}
    for i, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(i)
    heap = [(len(row), i) for i, row in enumerate(rows) if row]
    heapq.heapify(heap)
    done = [False] * len(rows)
    r = 0
    while heap:
        fill, i = heapq.heappop(heap)
        row = rows[i]
        if done[i] or fill != len(row):
            continue
        if not row:
            continue
        done[i] = True
        r += 1
        c = min(row)
        pv = row[c]
        for j in list(col_rows.get(c, ())):
            if j == i or done[j]:
                continue
            other = rows[j]
            a = other[c]
            if p is None:
                new = {k: pv * v for k, v in other.items()}
                for k, v in row.items():
                    new[k] = new.get(k, 0) - a * v
            else:
                f = a * pow(pv, -1, p) % p
                new = dict(other)
                for k, v in row.items():
                    new[k] = (new.get(k, 0) - f * v) % p
            new = {k: v for k, v in new.items() if v}
            if p is None:
                new = _primitive(new)
            for k in other:
                if k not in new:
                    col_rows[k].discard(j)
            for k in new:
                if k not in other:
                    col_rows.setdefault(k, set()).add(j)
            rows[j] = new
            if new:
                heapq.heappush(heap, (len(new), j))
        for k in row:
            col_rows[k].discard(i)
    return r


# ---------------------------------------------------------------- Smith normal form


def _invariant_factors(diagonal: list[int]) -> tuple[int, ...]:
    ones = [d for d in diagonal if d == 1]
    rest = sorted(d for d in diagonal if d != 1)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = math.gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    return tuple(ones + sorted(rest))


def smith_normal_form(M: SparseMatrix) -> SnfResult:
    """Invariant factors of an integer matrix by unimodular row and column operations."""
    M = M.over(Z) if M.field != Z else M
    rows = _rows_of(M)
    cols: dict[int, set] = {}
    for i, row in enumerate(rows):
        for c in row:
            cols.setdefault(c, set()).add(i)

    def set_row(i, new):
        old = rows[i]
        for k in old:
            if k not in new:
                cols[k].discard(i)
        for k in new:
            if k not in old:
                cols.setdefault(k, set()).add(i)
        rows[i] = new

    live = {i for i, row in enumerate(rows) if row}
    diagonal = []
    while live:
        # smallest |entry|, then sparsest row, then lowest indices
        best = None
        for i in live:
            row = rows[i]
            for c, v in row.items():
                key = (abs(v), len(row), i, c)
                if best is None or key < best:
                    best = key
            if best is not None and best[0] == 1 and best[1] == 1:
                break
        _, _, i, c = best
        while True:
            pv = rows[i][c]
            moved = False
            for j in sorted(cols.get(c, ())):
                if j == i:
                    continue
                a = rows[j][c]
                q = a // pv
                new = dict(rows[j])
                for k, v in rows[i].items():
                    new[k] = new.get(k, 0) - q * v
                set_row(j, {k: v for k, v in new.items() if v})
                if c in rows[j]:
                    i, moved = j, True
                    break
            if moved:
                continue
            # column c now holds only the pivot; column ops touch row i alone
            pv = rows[i][c]
            new = {c: pv}
            j_small = None
            for k, v in rows[i].items():
                if k == c:
                    continue
                rem = v - (v // pv) * pv
                if rem:
                    new[k] = rem
                    if j_small is None or (abs(rem), k) < (abs(new[j_small]), j_small):
                        j_small = k
            set_row(i, new)
            if j_small is None:
                break
            c = j_small
        diagonal.append(abs(rows[i][c]))
        set_row(i, {})
        live.discard(i)
        live = {j for j in live if rows[j]}
    inv = _invariant_factors(diagonal)
    return SnfResult(invariant_factors=inv, rank=len(inv))


# ---------------------------------------------------------------- homology


def check_composable(d_k: SparseMatrix, d_k_plus_1: SparseMatrix, degree: Optional[int] = None):
    if d_k.cols != d_k_plus_1.rows:
        raise ValueError(f"differentials not composable: {d_k.shape} then {d_k_plus_1.shape}")
    comp = d_k.over(d_k_plus_1.field) @ d_k_plus_1
    c = comp.first_nonzero_column()
    if c is not None:
        raise NotAComplex(
            f"composite of differentials is nonzero at degree {degree}, column {c}",
            {"degree": degree, "column": c, "entries": sorted(comp.column(c).items())},
        )


def homology_dims(d_k: SparseMatrix, d_k_plus_1: SparseMatrix, F: Optional[FieldSpec] = None,
                  degree: int = 0, check: bool = True) -> HomologySummary:
    """Homology at the middle term of ``. <-d_k- C_k <-d_{k+1}- .``.

    Over Z the dimension is the free rank and the torsion comes from the
    Smith form of ``d_{k+1}``.
    """
    F = F or d_k.field
    a, b = d_k.over(F), d_k_plus_1.over(F)
    if check:
        check_composable(a, b, degree)
    n = a.cols
    if F.is_field:
        dim = (n - rank(a, F)) - rank(b, F)
        return HomologySummary(degree, dim)
    ra = smith_normal_form(a).rank
    snf_b = smith_normal_form(b)
    return HomologySummary(degree, n - ra - snf_b.rank, snf_b.torsion)


class Echelon:
    """Incremental echelon basis over a field, optionally tracking tags.

    Every stored vector has its lowest index as pivot with coefficient 1;
    ``tags`` record which combination of inserted vectors it came from.
    """

    def __init__(self, field: FieldSpec):
        if not field.is_field:
            raise UnsupportedRing("echelon bases need a field")
        self.field = field
        self.p = field.p
        self.pivots: dict[int, tuple[dict, dict]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def _norm(self, v):
        if self.p is not None:
            return v % self.p
        return v

    def copy(self) -> "Echelon":
        # stored rows are never mutated in place, so sharing them is safe
        other = Echelon(self.field)
        other.pivots = dict(self.pivots)
        return other

    def _inv(self, v):
        if self.p is not None:
            return pow(v, -1, self.p)
        return 1 / gmpy2.mpq(v)

    def _lift(self, x):
        if self.p is not None:
            return x % self.p
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        return gmpy2.mpq(x)

    def reduce(self, vec: dict, tags: Optional[dict] = None) -> tuple[dict, dict]:
        v = {k: self._lift(x) for k, x in vec.items()}
        v = {k: x for k, x in v.items() if x != 0}
        t = dict(tags or {})
        while v:
            lead = min(v)
            hit = self.pivots.get(lead)
            if hit is None:
                break
            row, rtags = hit
            f = v[lead]
            for k, x in row.items():
                nv = self._norm(v.get(k, 0) - f * x)
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            for k, x in rtags.items():
                nt = self._norm(t.get(k, 0) - f * x)
                if nt:
                    t[k] = nt
                else:
                    t.pop(k, None)
        return v, t

    def insert(self, vec: dict, tags: Optional[dict] = None) -> tuple[bool, dict]:
        """Add ``vec``; return (independent, residual tags).

        When the vector is dependent the returned tags satisfy
        ``vec - sum(tag * inserted) == 0`` in the negated sense, i.e. they
        describe ``vec`` minus its expansion in the stored basis.
        """
        v, t = self.reduce(vec, tags)
        if not v:
            return False, t
        lead = min(v)
        s = self._inv(v[lead])
        v = {k: self._norm(x * s) for k, x in v.items()}
        t = {k: self._norm(x * s) for k, x in t.items()}
        self.pivots[lead] = (v, t)
        return True, t

    def coordinates(self, vec: dict) -> Optional[dict]:
        """Tag coordinates of ``vec`` in the span, or None if outside it."""
        v, t = self.reduce(vec, {})
        if v:
            return None
        return {k: to_scalar(self._norm(-x), self.field) for k, x in t.items()}


def to_scalar(x, F: FieldSpec):
    """Convert an internal scalar (gmpy2 rational or residue) to int/Fraction."""
    if F.kind == "Fp":
        return int(x)
    q = Fraction(int(gmpy2.numer(x)), int(gmpy2.denom(x))) if not isinstance(x, int) else x
    return F.coerce(q)


def kernel_basis(M: SparseMatrix, F: Optional[FieldSpec] = None) -> list[dict]:
    """Basis of the null space of ``M`` as sparse vectors over a field."""
    F = F or M.field
    M = M.over(F)
    ech = Echelon(F)
    out = []
    for j in range(M.cols):
        indep, t = ech.insert(M.column(j), {j: 1})
        if not indep:
            vec = {k: to_scalar(x, F) for k, x in t.items() if x != 0}
            out.append(vec)
    return out


def image_echelon(M: SparseMatrix, F: FieldSpec) -> Echelon:
    ech = Echelon(F)
    M = M.over(F)
    for j in range(M.cols):
        col = M._columns[j]
        if col:
            ech.insert(col)
    return ech


@dataclass
class HomologyBasis:
    """Cycle representatives whose classes form a basis of homology at one degree."""

    degree: int
    representatives: list[dict]
    echelon: Echelon = field(repr=False)
    boundaries: Echelon = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.representatives)


def homology_basis(out_map: SparseMatrix, in_map: SparseMatrix, F: FieldSpec,
                   degree: int = 0) -> HomologyBasis:
    """Pick cycle representatives: kernel basis of ``out_map`` reduced modulo the image of ``in_map``.

    The returned echelon spans boundaries plus representatives, tagged so that
    ``echelon.coordinates(cycle)`` gives the class in representative coordinates.
    """
    boundaries = image_echelon(in_map, F)
    ech = boundaries.copy()
    reps = []
    for z in kernel_basis(out_map, F):
        indep, _ = ech.insert(z, {len(reps): 1})
        if indep:
            reps.append(z)
    return HomologyBasis(degree, reps, ech, boundaries)


def induced_homology_map(f_k: SparseMatrix, source: tuple[SparseMatrix, SparseMatrix],
                         target: tuple[SparseMatrix, SparseMatrix], F: FieldSpec,
                         degree: int = 0, source_basis: Optional[HomologyBasis] = None,
                         target_basis: Optional[HomologyBasis] = None) -> tuple[list[list], bool]:
    """Matrix of the map induced on homology at one degree, and whether it is invertible.

    ``source`` and ``target`` are ``(outgoing, incoming)`` differential pairs
    at the degree. ``f_k`` must send cycles to cycles and boundaries to
    boundaries; otherwise NotAChainMap is raised with the offending vector.
    """
    f = f_k.over(F)
    s_out, s_in = (m.over(F) for m in source)
    t_out, t_in = (m.over(F) for m in target)
    if f.cols != s_out.cols or f.rows != t_out.cols:
        raise ValueError(f"map shape {f.shape} does not fit {s_out.cols} -> {t_out.cols}")

    sb = source_basis or homology_basis(s_out, s_in, F, degree)
    tb = target_basis or homology_basis(t_out, t_in, F, degree)
    for j in range(s_in.cols):
        img = f.apply(s_in.column(j))
        if tb.boundaries.coordinates(img) is None:
            raise NotAChainMap(f"boundary not sent to a boundary at degree {degree}",
                               {"degree": degree, "kind": "boundary", "column": j})
    mat = [[0] * sb.dimension for _ in range(tb.dimension)]
    for j, z in enumerate(sb.representatives):
        img = f.apply(z)
        if t_out.apply(img):
            raise NotAChainMap(f"cycle not sent to a cycle at degree {degree}",
                               {"degree": degree, "kind": "cycle", "representative": j})
        coords = tb.echelon.coordinates(img)
        if coords is None:
            raise NotAChainMap(f"image of a cycle left the cycle space at degree {degree}",
                               {"degree": degree, "kind": "cycle", "representative": j})
        for i, x in coords.items():
            mat[i][j] = x
    is_iso = sb.dimension == tb.dimension and (
        sb.dimension == 0 or rank(SparseMatrix.from_dense(mat, F), F) == sb.dimension)
    return mat, is_iso

