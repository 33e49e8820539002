"""Orders presented by integral multiplication tables, and their finite quotients.

An order here is any rank-n commutative unital ring over Z given by the
products of its basis vectors (b_1 = 1 by convention).  Ideals appear as
full-rank sublattices of the coordinate lattice in canonical row Hermite
form, finite quotients are built through the Smith normal form, and the
shift-minimization question for order ideals is answered inside the
quotient by their intersection.

All arithmetic in this module is arbitrary-precision; numpy never touches
these matrices because SNF intermediates can exceed any fixed width.
"""

from dataclasses import dataclass, field

from . import config, intmat
from .errors import (
    BadUnit,
    NotAnIdeal,
    NotAssociative,
    NotCommutative,
    RankDeficient,
    ValidationError,
    ZeroRingRejected,
)
from .ideals import Ideal, ideal_from_members
from .intmat import SnfResult, hnf, snf  # re-exported: the canonical-form operations
from .localstruct import classify
from .rings import Element, FiniteRing, RingPresentation, validate_ring
from .rogers import RogersReport, Witness, counterexample, rogers_check

Vec = tuple[int, ...]


@dataclass(frozen=True)
class OrderPresentation:
    """Rank and basis products; table keys (i, j) are 0-based with
    1 <= i <= j (products involving b_0 = 1 are implied)."""

    rank: int
    table: dict[tuple[int, int], Vec] = field(default_factory=dict)


class IntegerLattice:
    """Full-rank sublattice of Z^n in canonical row Hermite normal form."""

    __slots__ = ("basis", "n")

    def __init__(self, basis):
        self.basis = tuple(tuple(int(x) for x in row) for row in basis)
        self.n = len(self.basis)
        for i, row in enumerate(self.basis):
            if len(row) != self.n or row[i] <= 0 or any(row[j] for j in range(i)):
                raise ValidationError("basis is not an upper-triangular HNF")

    @classmethod
    def from_rows(cls, rows, n: int) -> "IntegerLattice":
        return cls(intmat.hnf_full_rank(rows, n))

    @property
    def index(self) -> int:
        """[Z^n : L], the product of the pivots."""
        return intmat.lattice_det(self.basis)

    def contains(self, vec) -> bool:
        return intmat.lattice_contains(self.basis, vec)

    def reduce(self, vec) -> Vec:
        """Canonical representative of vec modulo the lattice."""
        v = [int(x) for x in vec]
        for i in range(self.n):
            q = v[i] // self.basis[i][i]
            if q:
                for j in range(i, self.n):
                    v[j] -= q * self.basis[i][j]
        return tuple(v)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerLattice) and other.basis == self.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"IntegerLattice({self.basis})"


class Order:
    """A validated order; multiplication is exact over Z."""

    def __init__(self, presentation: OrderPresentation, table_full):
        self.presentation = presentation
        self.rank = presentation.rank
        self._table = table_full  # [i][j] -> coordinate list of b_i * b_j

    def basis_product(self, i: int, j: int) -> Vec:
        return tuple(self._table[i][j])

    def mul(self, a, b) -> Vec:
        n = self.rank
        out = [0] * n
        for i in range(n):
            ai = int(a[i])
            if ai == 0:
                continue
            for j in range(n):
                bj = int(b[j])
                if bj == 0:
                    continue
                prod = self._table[i][j]
                c = ai * bj
                for l in range(n):
                    out[l] += c * prod[l]
        return tuple(out)

    @property
    def one(self) -> Vec:
        return tuple(1 if i == 0 else 0 for i in range(self.rank))

    def __repr__(self) -> str:
        return f"Order(rank={self.rank})"


def validate_order(
    presentation: OrderPresentation, rank_bound: int = config.ORDER_RANK_BOUND
) -> Order:
    """Exact commutativity/associativity checks on all basis tuples."""
    n = presentation.rank
    if not 1 <= n <= rank_bound:
        raise ValidationError(f"rank must be between 1 and {rank_bound}")
    table = [[None] * n for _ in range(n)]
    for j in range(n):
        table[0][j] = [1 if l == j else 0 for l in range(n)]
        table[j][0] = table[0][j]
    for (i, j), vec in presentation.table.items():
        if not (0 <= i < n and 0 <= j < n) or len(vec) != n:
            raise ValidationError(f"malformed table entry for ({i},{j})")
        vec = [int(x) for x in vec]
        if i == 0 or j == 0:
            if vec != table[i][j]:
                raise BadUnit("products with b_1 must be the identity")
            continue
        for spot in ((i, j), (j, i)):
            if table[spot[0]][spot[1]] is not None and table[spot[0]][spot[1]] != vec:
                raise NotCommutative(f"entries for ({i+1},{j+1}) and ({j+1},{i+1}) disagree")
        table[i][j] = vec
        table[j][i] = vec
    for i in range(1, n):
        for j in range(1, n):
            if table[i][j] is None:
                raise ValidationError(f"missing product b_{i+1}*b_{j+1}")
    order = Order(presentation, table)
    basis = [tuple(1 if l == t else 0 for l in range(n)) for t in range(n)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                left = order.mul(order.mul(basis[i], basis[j]), basis[l])
                right = order.mul(basis[i], order.mul(basis[j], basis[l]))
                if left != right:
                    raise NotAssociative(
                        f"(b_{i+1}*b_{j+1})*b_{l+1} != b_{i+1}*(b_{j+1}*b_{l+1})"
                    )
    return order


def order_ideal(order: Order, gens) -> IntegerLattice:
    """Lattice of the ideal generated by integer vectors (module closure).

    Spanned by all g * b_i; rank deficiency means the zero ideal or a
    degenerate presentation and is rejected.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        raise RankDeficient("need at least one generator")
    n = order.rank
    basis = [tuple(1 if l == t else 0 for l in range(n)) for t in range(n)]
    rows = [list(order.mul(g, b)) for g in gens for b in basis]
    try:
        return IntegerLattice.from_rows(rows, n)
    except RankDeficient:
        raise RankDeficient("generators span a rank-deficient lattice (zero ideal)")


def lattice_intersect(l1: IntegerLattice, l2: IntegerLattice) -> IntegerLattice:
    return IntegerLattice(intmat.lattice_intersect(l1.basis, l2.basis, l1.n))


class OrderProjection:
    """Coordinate projection from an order onto a finite quotient ring."""

    def __init__(self, order: Order, lattice: IntegerLattice, ring: FiniteRing,
                 proj_cols, section_rows):
        self.order = order
        self.lattice = lattice
        self.ring = ring
        self._proj_cols = proj_cols  # [ambient_coord][new_coord], pre-reduced
        self._section_rows = section_rows

    def __call__(self, vec) -> Element:
        n = self.order.rank
        df = self.ring.invariant_factors
        coords = tuple(
            sum(int(vec[r]) * self._proj_cols[r][t] for r in range(n)) % df[t]
            for t in range(self.ring.k)
        )
        return Element(self.ring, coords)

    def section(self, el: Element) -> Vec:
        """Canonical integer lift of a quotient element."""
        n = self.order.rank
        vec = [0] * n
        for t, c in enumerate(el.coords):
            row = self._section_rows[t]
            for r in range(n):
                vec[r] += c * row[r]
        return self.lattice.reduce(vec)

    def push_lattice(self, sub: IntegerLattice) -> Ideal:
        """Image of an ideal lattice containing the kernel lattice."""
        members = [
            i for i in range(self.ring.order)
            if sub.contains(self.section(self.ring.element_at(i)))
        ]
        return ideal_from_members(self.ring, members)


def order_quotient(
    order: Order,
    lattice: IntegerLattice,
    carrier_bound: int = config.CARRIER_BOUND,
) -> tuple[FiniteRing, OrderProjection]:
    """Finite quotient ring of the order by an ideal lattice.

    The lattice must be closed under multiplication by the order's basis
    (i.e. actually be an ideal).  The quotient's additive group is read off
    the Smith normal form; multiplication is transported through the
    unimodular change of basis, and the result passes full ring validation.
    """
    n = order.rank
    basis = [tuple(1 if l == t else 0 for l in range(n)) for t in range(n)]
    for row in lattice.basis:
        for b in basis[1:]:
            if not lattice.contains(order.mul(row, b)):
                raise NotAnIdeal(f"lattice row {row} times basis {b} escapes the lattice")
    res = intmat.snf(lattice.basis)
    diag = res.diagonal
    kept = [i for i in range(n) if diag[i] > 1]
    if not kept:
        raise ZeroRingRejected("quotient by the unit ideal is the order-1 ring")
    df_new = tuple(int(diag[i]) for i in kept)
    v = [list(r) for r in res.v]
    vinv = intmat.invert_unimodular(v)
    proj_cols = [[v[r][kept[t]] % df_new[t] for t in range(len(kept))] for r in range(n)]
    section_rows = [lattice.reduce(vinv[kept[t]]) for t in range(len(kept))]

    def proj_vec(vec):
        return tuple(
            sum(int(vec[r]) * proj_cols[r][t] for r in range(n)) % df_new[t]
            for t in range(len(kept))
        )

    sc = {}
    for t in range(len(kept)):
        for u in range(t, len(kept)):
            sc[(t, u)] = proj_vec(order.mul(section_rows[t], section_rows[u]))
    pres = RingPresentation(df_new, sc, proj_vec(order.one))
    ring = validate_ring(pres, carrier_bound=carrier_bound)
    return ring, OrderProjection(order, lattice, ring, proj_cols, section_rows)


def push_to_quotient(order: Order, ideal_gen_lists):
    """Common setup: ideal lattices, their intersection H, the quotient
    ring with projection, and the image ideals."""
    lattices = [order_ideal(order, gens) for gens in ideal_gen_lists]
    common = lattices[0]
    for lat in lattices[1:]:
        common = lattice_intersect(common, lat)
    ring, proj = order_quotient(order, common)
    images = tuple(proj.push_lattice(lat) for lat in lattices)
    return lattices, common, ring, proj, images


def rogers_check_order(
    order: Order,
    ideal_gen_lists,
    shifts=None,
    tuple_cap: int = config.TUPLE_CAP,
    workers: int = 1,
) -> RogersReport:
    """Shift minimization for order ideals, computed in O/(I_1 n ... n I_r).

    Every generator list must span a full-rank (nonzero) ideal; the
    intersection of nonzero ideals in an order is again full rank, so the
    quotient is finite and the finite-ring engine applies verbatim.
    """
    _, _, ring, proj, images = push_to_quotient(order, ideal_gen_lists)
    shift_els = None
    if shifts is not None:
        shift_els = tuple(proj(vec) for vec in shifts)
    return rogers_check(ring, images, shifts=shift_els, tuple_cap=tuple_cap, workers=workers)


@dataclass(frozen=True)
class ProbeWitness:
    """A conductor at which the order fails the chain-local-product test,
    with the lifted and re-verified violating ideals."""

    conductor: int
    quotient: FiniteRing
    quotient_witness: Witness
    ideal_generators: tuple[tuple[Vec, ...], ...]
    shifts: tuple[Vec, ...]
    report: RogersReport


def nonmaximality_probe(
    order: Order, bound: int, tuple_cap: int = config.TUPLE_CAP
) -> ProbeWitness | None:
    """Scan quotients O/(n) for n <= bound for a non-chain local factor.

    On the first hit, builds the violating triple in the quotient, lifts
    the ideals back to the order (witness generators' lifts plus n times
    the basis) and re-verifies through the order-level check.  Returns
    None when every quotient up to the bound passes.
    """
    if bound < 2:
        raise ValueError("probe bound must be at least 2")
    n = order.rank
    basis = [tuple(1 if l == t else 0 for l in range(n)) for t in range(n)]
    for conductor in range(2, bound + 1):
        principal = order_ideal(order, [tuple(conductor if l == 0 else 0 for l in range(n))])
        ring, proj = order_quotient(order, principal)
        if classify(ring).is_chain_local_product:
            continue
        witness = counterexample(ring)
        lifted_gens = []
        for ideal in witness.ideals:
            gens = [proj.section(g) for g in ideal.generators]
            gens += [tuple(conductor * x for x in b) for b in basis]
            lifted_gens.append(tuple(gens))
        lifted_shifts = tuple(proj.section(s) for s in witness.shifts)
        report = rogers_check_order(
            order, lifted_gens, shifts=lifted_shifts, tuple_cap=tuple_cap
        )
        assert not report.satisfied, "lifted witness failed re-verification"
        return ProbeWitness(
            conductor=conductor,
            quotient=ring,
            quotient_witness=witness,
            ideal_generators=tuple(lifted_gens),
            shifts=lifted_shifts,
            report=report,
        )
    return None


def parse_order_text(text: str, rank_bound: int = config.ORDER_RANK_BOUND) -> Order:
    """Parse the order description format.

    Lines: ``order n`` then ``mul i j c_1 ... c_n`` for 1-based
    2 <= i <= j <= n; products involving b_1 are implied.  ``#`` comments.
    """
    rank = None
    table = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "order":
            if rank is not None:
                raise ValidationError(f"line {lineno}: duplicate order header")
            rank = int(parts[1])
        elif parts[0] == "mul":
            if rank is None:
                raise ValidationError(f"line {lineno}: mul before order header")
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            vec = tuple(int(x) for x in parts[3:])
            if not (1 <= i <= j < rank) or len(vec) != rank:
                raise ValidationError(f"line {lineno}: malformed mul line")
            table[(i, j)] = vec
        else:
            raise ValidationError(f"line {lineno}: unknown directive {parts[0]!r}")
    if rank is None:
        raise ValidationError("order file needs an order header")
    return validate_order(OrderPresentation(rank=rank, table=table), rank_bound=rank_bound)


def format_order_text(order: Order) -> str:
    lines = [f"order {order.rank}"]
    for i in range(1, order.rank):
        for j in range(i, order.rank):
            vec = order.basis_product(i, j)
            lines.append("mul %d %d %s" % (i + 1, j + 1, " ".join(map(str, vec))))
    return "\n".join(lines) + "\n"
