"""Built-in ring and order constructions used by the CLI and the test suites.

Names accepted by :func:`resolve` (with the ``catalog:`` prefix in the CLI):

  Zn:<n>      cyclic ring Z/n
  Z12         alias for Zn:12
  Fq:<q>      finite field, q in {2,3,4,5,7,8,9} (prime powers via tables)
  dual:<p>    F_p[t]/(t^2)
  socle2:<q>  F_q[x,y]/(x,y)^2 -- local with a two-dimensional socle
  F2xy, F3xy  aliases for socle2:2 / socle2:3
  C1          F_2[x,y]/(x^2, y^2): local of order 16 whose quotient by its
              unique minimal ideal is socle2:2
  Z2i         the order Z[2i]  (rank-2, t^2 = -4)
  Zi          the Gaussian integers Z[i]  (rank-2, t^2 = -1)
"""

from . import config
from .orders import Order, OrderPresentation, validate_order
from .rings import FiniteRing, RingPresentation, make_cyclic, make_product, validate_ring

# multiplication tables for the small prime-power fields, as polynomial
# quotients: q -> (p, e, coords of t^e, ..., enough to rebuild products)
_FIELD_MODULI = {
    4: (2, [1, 1]),   # t^2 = 1 + t
    8: (2, [1, 1, 0]),  # t^3 = 1 + t
    9: (3, [2, 0]),   # t^2 = 2
}


def _poly_mul_mod(a, b, p, reduction):
    """Product of coefficient vectors modulo (t^e - reduction) over F_p."""
    e = len(reduction)
    out = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    for deg in range(2 * e - 2, e - 1, -1):
        c = out[deg]
        if c:
            out[deg] = 0
            for i, r in enumerate(reduction):
                out[deg - e + i] = (out[deg - e + i] + c * r) % p
    return out[:e]


def field_tables(q: int) -> tuple[int, int, list[list[list[int]]]]:
    """(p, e, mul) with mul[i][j] = coords of the product of basis monomials."""
    if q in (2, 3, 5, 7):
        return q, 1, [[[1]]]
    if q not in _FIELD_MODULI:
        raise ValueError(f"no field table for q={q}")
    p, reduction = _FIELD_MODULI[q]
    e = len(reduction)
    mul = [[None] * e for _ in range(e)]
    for i in range(e):
        for j in range(e):
            a = [0] * e
            a[i] = 1
            b = [0] * e
            b[j] = 1
            mul[i][j] = _poly_mul_mod(a, b, p, reduction)
    return p, e, mul


def finite_field(q: int, carrier_bound: int = config.CARRIER_BOUND) -> FiniteRing:
    p, e, mul = field_tables(q)
    sc = {}
    for i in range(e):
        for j in range(i, e):
            sc[(i, j)] = tuple(mul[i][j])
    unit = tuple(1 if i == 0 else 0 for i in range(e))
    pres = RingPresentation((p,) * e, sc, unit)
    return validate_ring(pres, carrier_bound=carrier_bound)


def dual_numbers(p: int, carrier_bound: int = config.CARRIER_BOUND) -> FiniteRing:
    """F_p[t]/(t^2)."""
    pres = RingPresentation(
        (p, p),
        {(0, 0): (1, 0), (0, 1): (0, 1), (1, 1): (0, 0)},
        (1, 0),
    )
    return validate_ring(pres, carrier_bound=carrier_bound)


def socle_plane_ring(q: int, carrier_bound: int = config.CARRIER_BOUND) -> FiniteRing:
    """F_q[x,y]/(x,y)^2: basis blocks (field, field*x, field*y)."""
    p, e, mul = field_tables(q)
    k = 3 * e
    sc = {}
    for bi in range(3):
        for bj in range(3):
            for i in range(e):
                for j in range(e):
                    gi, gj = bi * e + i, bj * e + j
                    if gi > gj:
                        continue
                    vec = [0] * k
                    if bi == 0 or bj == 0:
                        # a product involving the field block lands in the
                        # other operand's block; products of x/y blocks vanish
                        target = bi + bj  # 0*0->0, 0*1->1, 0*2->2
                        prod = mul[i][j]
                        for l in range(e):
                            vec[target * e + l] = prod[l]
                    sc[(gi, gj)] = tuple(vec)
    unit = tuple(1 if i == 0 else 0 for i in range(k))
    pres = RingPresentation((p,) * k, sc, unit)
    return validate_ring(pres, carrier_bound=carrier_bound)


def ring_c1(carrier_bound: int = config.CARRIER_BOUND) -> FiniteRing:
    """F_2[x,y]/(x^2, y^2): basis (1, x, y, xy); unique minimal ideal (xy)."""
    sc = {
        (0, 0): (1, 0, 0, 0),
        (0, 1): (0, 1, 0, 0),
        (0, 2): (0, 0, 1, 0),
        (0, 3): (0, 0, 0, 1),
        (1, 1): (0, 0, 0, 0),
        (1, 2): (0, 0, 0, 1),
        (1, 3): (0, 0, 0, 0),
        (2, 2): (0, 0, 0, 0),
        (2, 3): (0, 0, 0, 0),
        (3, 3): (0, 0, 0, 0),
    }
    pres = RingPresentation((2, 2, 2, 2), sc, (1, 0, 0, 0))
    return validate_ring(pres, carrier_bound=carrier_bound)


def order_z2i() -> Order:
    """Z[2i]: rank 2, basis (1, t) with t = 2i, so t^2 = -4."""
    return validate_order(OrderPresentation(rank=2, table={(1, 1): (-4, 0)}))


def order_zi() -> Order:
    """Z[i]: rank 2, basis (1, t) with t = i."""
    return validate_order(OrderPresentation(rank=2, table={(1, 1): (-1, 0)}))


FIELD_SIZES = (2, 3, 4, 5, 7, 8, 9)


def resolve(name: str, carrier_bound: int = config.CARRIER_BOUND):
    """Return ("ring", FiniteRing) or ("order", Order) for a catalog name."""
    if name == "Z12":
        return "ring", make_cyclic(12, carrier_bound)
    if name == "F2xy":
        return "ring", socle_plane_ring(2, carrier_bound)
    if name == "F3xy":
        return "ring", socle_plane_ring(3, carrier_bound)
    if name == "C1":
        return "ring", ring_c1(carrier_bound)
    if name == "Z2i":
        return "order", order_z2i()
    if name == "Zi":
        return "order", order_zi()
    if ":" in name:
        kind, _, arg = name.partition(":")
        value = int(arg)
        if kind == "Zn":
            return "ring", make_cyclic(value, carrier_bound)
        if kind == "Fq":
            return "ring", finite_field(value, carrier_bound)
        if kind == "dual":
            return "ring", dual_numbers(value, carrier_bound)
        if kind == "socle2":
            return "ring", socle_plane_ring(value, carrier_bound)
    raise KeyError(f"unknown catalog name {name!r}")


def acceptance_base_rings() -> list[tuple[str, FiniteRing]]:
    """The base catalog the acceptance suites quantify over."""
    out = [(f"Zn:{n}", make_cyclic(n)) for n in range(2, 65)]
    out += [(f"Fq:{q}", finite_field(q)) for q in FIELD_SIZES]
    out += [(f"dual:{p}", dual_numbers(p)) for p in (2, 3)]
    out += [(f"socle2:{p}", socle_plane_ring(p)) for p in (2, 3)]
    out.append(("C1", ring_c1()))
    return out


def acceptance_catalog(carrier_bound: int = config.CARRIER_BOUND):
    """Base rings plus all pairwise products within the carrier bound.

    Yields (name, ring) pairs; products are lazily constructed so callers
    can stream through without holding every ring at once.
    """
    base = acceptance_base_rings()
    for name, ring in base:
        yield name, ring
    for i, (name_a, a) in enumerate(base):
        for name_b, b in base[i:]:
            if a.order * b.order > carrier_bound:
                continue
            product, _ = make_product([a, b], carrier_bound=carrier_bound)
            yield f"{name_a}*{name_b}", product
