"""Finite groups as explicit Cayley tables, automorphism actions and semidirect products.

Elements are integers 0..order-1. All tables are numpy int32 arrays frozen
after construction; every operation here is a pure function of its inputs.
"""

from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from math import lcm

import numpy as np

from .errors import ValidationError

DEFAULT_ORDER_CAP = 2000

# Exhaustive associativity checking is cubic; above this order we sample.
_EXHAUSTIVE_ASSOC_LIMIT = 256
_ASSOC_SAMPLES = 100_000


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class FiniteGroup:
    """A finite group given by its full multiplication table.

    mult[a, b] is the index of a*b; identity and inverse tables are precomputed.
    """

    def __init__(self, mult, element_labels=None, *, validate: bool = True,
                 order_cap: int = DEFAULT_ORDER_CAP):
        table = np.asarray(mult, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValidationError(f"multiplication table must be square, got shape {table.shape}")
        n = int(table.shape[0])
        if n == 0:
            raise ValidationError("a group has at least one element")
        if n > order_cap:
            raise ValidationError(f"group order {n} exceeds cap {order_cap}")
        if table.min() < 0 or table.max() >= n:
            raise ValidationError("table entries must be element indices in range")
        self.order = n
        self.mult = _frozen(table)
        if validate:
            _check_latin_square(table)
        self.identity = _find_identity(table)
        self.inverse = _frozen(_build_inverse(table, self.identity))
        if validate:
            _check_associativity(table)
        if element_labels is not None:
            labels = tuple(str(s) for s in element_labels)
            if len(labels) != n:
                raise ValidationError("element_labels length does not match order")
            self.element_labels = labels
        else:
            self.element_labels = None

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    @cached_property
    def content_hash(self) -> str:
        """Canonical hash of the Cayley table; keys caches and serialized data."""
        h = hashlib.sha256()
        h.update(b"ellrank-group-v1:")
        h.update(str(self.order).encode())
        h.update(b":")
        h.update(np.ascontiguousarray(self.mult, dtype=np.int32).tobytes())
        return h.hexdigest()

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = [0] * self.order
        mult = self.mult
        e = self.identity
        for g in range(self.order):
            k, x = 1, g
            while x != e:
                x = int(mult[x, g])
                k += 1
            orders[g] = k
        return tuple(orders)

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.element_orders)

    def label(self, a: int) -> str:
        if self.element_labels is not None:
            return self.element_labels[a]
        return str(a)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _check_latin_square(table: np.ndarray) -> None:
    n = table.shape[0]
    ar = np.arange(n, dtype=np.int32)
    if not np.array_equal(np.sort(table, axis=1), np.broadcast_to(ar, table.shape)):
        bad = next(i for i in range(n) if not np.array_equal(np.sort(table[i]), ar))
        raise ValidationError(f"row {bad} of the multiplication table is not a permutation")
    if not np.array_equal(np.sort(table, axis=0), np.broadcast_to(ar[:, None], table.shape)):
        bad = next(j for j in range(n) if not np.array_equal(np.sort(table[:, j]), ar))
        raise ValidationError(f"column {bad} of the multiplication table is not a permutation")


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    ar = np.arange(n, dtype=np.int32)
    for e in range(n):
        if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
            return e
    raise ValidationError("table has no two-sided identity element")


def _build_inverse(table: np.ndarray, identity: int) -> np.ndarray:
    n = table.shape[0]
    inv = np.empty(n, dtype=np.int32)
    rows, cols = np.nonzero(table == identity)
    inv[rows] = cols
    for a in range(n):
        if table[inv[a], a] != identity:
            raise ValidationError(f"element {a} has no two-sided inverse")
    return inv


def _check_associativity(table: np.ndarray) -> None:
    n = table.shape[0]
    if n <= _EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            left = table[table[a], :]        # (a*b)*c over all b, c
            right = table[a, table]          # a*(b*c)
            if not np.array_equal(left, right):
                b, c = map(int, np.argwhere(left != right)[0])
                raise ValidationError(f"multiplication not associative at triple ({a}, {b}, {c})")
    else:
        rng = np.random.default_rng(0)
        a = rng.integers(0, n, _ASSOC_SAMPLES)
        b = rng.integers(0, n, _ASSOC_SAMPLES)
        c = rng.integers(0, n, _ASSOC_SAMPLES)
        left = table[table[a, b], c]
        right = table[a, table[b, c]]
        if not np.array_equal(left, right):
            i = int(np.nonzero(left != right)[0][0])
            raise ValidationError(
                f"multiplication not associative at triple ({a[i]}, {b[i]}, {c[i]})")


# ---------------------------------------------------------------------------
# Construction

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be positive")
    idx = np.arange(n, dtype=np.int32)
    table = (idx[:, None] + idx[None, :]) % n
    labels = ["e"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return FiniteGroup(table, labels[:n], validate=False)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element i + n*e is r^i s^e."""
    if n < 1:
        raise ValidationError("dihedral parameter must be positive")
    m = 2 * n
    table = np.empty((m, m), dtype=np.int32)
    for i1, e1 in itertools.product(range(n), range(2)):
        a = i1 + n * e1
        for i2, e2 in itertools.product(range(n), range(2)):
            b = i2 + n * e2
            i = (i1 + (i2 if e1 == 0 else -i2)) % n
            table[a, b] = i + n * ((e1 + e2) % 2)
    labels = [f"r^{i}" for i in range(n)] + [f"r^{i}s" for i in range(n)]
    labels[0] = "e"
    return FiniteGroup(table, labels, validate=False)


def symmetric_group(n: int) -> FiniteGroup:
    """Symmetric group on n letters (n <= 5), elements in lexicographic order."""
    if not 1 <= n <= 5:
        raise ValidationError("symmetric group preset supports 1 <= n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    table = np.empty((m, m), dtype=np.int32)
    for a, pa in enumerate(perms):
        for b, pb in enumerate(perms):
            table[a, b] = index[tuple(pa[pb[i]] for i in range(n))]
    labels = ["".join(str(x) for x in p) for p in perms]
    return FiniteGroup(table, labels, validate=False)


_QUAT_LABELS = ("1", "i", "j", "k", "-1", "-i", "-j", "-k")


def quaternion_group() -> FiniteGroup:
    """The quaternion group Q_8 on {±1, ±i, ±j, ±k}."""
    base = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    table = np.empty((8, 8), dtype=np.int32)
    for a in range(8):
        for b in range(8):
            unit, sign = base[(a % 4, b % 4)]
            sign ^= (a >= 4) ^ (b >= 4)
            table[a, b] = unit + 4 * sign
    return FiniteGroup(table, _QUAT_LABELS, validate=False)


def elementary_abelian_group(p: int, k: int) -> FiniteGroup:
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise ValidationError(f"{p} is not prime")
    if k < 1:
        raise ValidationError("exponent k must be positive")
    n = p ** k
    if n > DEFAULT_ORDER_CAP:
        raise ValidationError(f"elementary abelian order {n} exceeds cap")
    digits = np.array([_digits(i, p, k) for i in range(n)], dtype=np.int64)
    sums = (digits[:, None, :] + digits[None, :, :]) % p
    powers = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    table = (sums * powers).sum(axis=2).astype(np.int32)
    labels = ["(" + ",".join(map(str, _digits(i, p, k))) + ")" for i in range(n)]
    return FiniteGroup(table, labels, validate=False)


def _digits(i: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(i % p)
        i //= p
    return out[::-1]


def direct_product(a: FiniteGroup, b: FiniteGroup,
                   order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    n, m = a.order, b.order
    if n * m > order_cap:
        raise ValidationError(f"direct product order {n * m} exceeds cap {order_cap}")
    table = (a.mult.astype(np.int64)[:, None, :, None] * m
             + b.mult.astype(np.int64)[None, :, None, :])
    table = table.reshape(n * m, n * m).astype(np.int32)
    labels = None
    if a.element_labels and b.element_labels:
        labels = [f"({la},{lb})" for la in a.element_labels for lb in b.element_labels]
    return FiniteGroup(table, labels, validate=False)


def group_from_permutations(generators, *, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Closure of permutation generators; breadth-first from the identity,
    generators applied in input order, so the element order is reproducible."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ValidationError("at least one permutation generator is required")
    degree = len(gens[0])
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValidationError(f"{g} is not a permutation of 0..{degree - 1}")
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident: 0}
    frontier = [ident]
    while frontier:
        new_frontier = []
        for q in frontier:
            for g in gens:
                prod = tuple(g[q[i]] for i in range(degree))  # g after q
                if prod not in seen:
                    if len(elements) >= order_cap:
                        raise ValidationError(f"generated group exceeds order cap {order_cap}")
                    seen[prod] = len(elements)
                    elements.append(prod)
                    new_frontier.append(prod)
        frontier = new_frontier
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    for i, pi in enumerate(elements):
        for j, pj in enumerate(elements):
            table[i, j] = seen[tuple(pi[pj[t]] for t in range(degree))]
    labels = [str(p) for p in elements]
    return FiniteGroup(table, labels, validate=False)


_PRESET_RE = re.compile(r"^[a-z ]+")


def parse_group_spec(spec) -> FiniteGroup:
    """Build a group from a preset string, an explicit table, or permutation generators.

    Strings: 'cyclic N', 'dihedral N', 'symmetric N', 'quaternion 8',
    'elementary abelian P^K', and ' x '-joined direct products of these.
    Dicts: {'preset': str} | {'table': [[...]]} | {'generators': [[...], ...]}.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        return _parse_preset_string(spec)
    if isinstance(spec, dict):
        keys = set(spec) & {"preset", "table", "generators"}
        if len(keys) != 1:
            raise ValidationError(
                "group spec dict needs exactly one of 'preset', 'table', 'generators'")
        if "preset" in spec:
            return _parse_preset_string(spec["preset"])
        if "table" in spec:
            return FiniteGroup(spec["table"])
        return group_from_permutations(spec["generators"])
    if isinstance(spec, (list, tuple)):
        return FiniteGroup(spec)
    raise ValidationError(f"cannot interpret group spec of type {type(spec).__name__}")


def _parse_preset_string(name: str) -> FiniteGroup:
    text = name.strip().lower().replace("_", " ").replace("-", " ")
    parts = [p.strip() for p in re.split(r"\s+x\s+|×", text)]
    groups = [_parse_single_preset(p) for p in parts]
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


def _parse_single_preset(text: str) -> FiniteGroup:
    tokens = text.split()
    if not tokens:
        raise ValidationError("empty group preset")
    head = tokens[0]
    if head == "trivial":
        return cyclic_group(1)
    if head in ("cyclic", "c") and len(tokens) == 2:
        return cyclic_group(_int_token(tokens[1]))
    if head in ("dihedral", "d") and len(tokens) == 2:
        return dihedral_group(_int_token(tokens[1]))
    if head in ("symmetric", "s") and len(tokens) == 2:
        return symmetric_group(_int_token(tokens[1]))
    if head in ("quaternion", "q"):
        if len(tokens) == 2 and _int_token(tokens[1]) != 8:
            raise ValidationError("only quaternion 8 is available")
        return quaternion_group()
    if head == "elementary" and len(tokens) >= 3 and tokens[1] == "abelian":
        rest = " ".join(tokens[2:]).replace("^", " ").split()
        if len(rest) == 1:
            return elementary_abelian_group(_int_token(rest[0]), 1)
        if len(rest) == 2:
            return elementary_abelian_group(_int_token(rest[0]), _int_token(rest[1]))
    raise ValidationError(f"unknown group preset {text!r}")


def _int_token(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ValidationError(f"expected an integer, got {tok!r}") from None


# ---------------------------------------------------------------------------
# Conjugacy classes

@dataclass(frozen=True)
class ClassPartition:
    """Conjugacy classes of a group: class 0 is {identity}, the rest are
    ordered by (size, smallest member)."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    inverse_class: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @cached_property
    def representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)


def conjugacy_classes(group: FiniteGroup) -> ClassPartition:
    n = group.order
    mult = group.mult
    inv = group.inverse
    all_g = np.arange(n, dtype=np.int32)
    assigned = np.zeros(n, dtype=bool)
    raw: list[tuple[int, ...]] = []
    for x in range(n):
        if assigned[x]:
            continue
        orbit = np.unique(mult[mult[all_g, x], inv[all_g]])
        assigned[orbit] = True
        raw.append(tuple(int(v) for v in orbit))
    e = group.identity
    ident_cls = next(c for c in raw if c[0] == e or e in c)
    rest = sorted((c for c in raw if c is not ident_cls), key=lambda c: (len(c), c[0]))
    classes = (ident_cls, *rest)
    class_of = [0] * n
    for k, cls in enumerate(classes):
        for member in cls:
            class_of[member] = k
    inverse_class = tuple(class_of[group.inv(c[0])] for c in classes)
    return ClassPartition(classes, tuple(class_of), inverse_class)


# ---------------------------------------------------------------------------
# Automorphisms and semidirect products

@dataclass(frozen=True)
class Automorphism:
    """A group automorphism stored as a full permutation of element indices."""

    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]


@dataclass(frozen=True)
class SigmaAction:
    """A subgroup of Aut(G): generators plus the full closure, identity first."""

    generators: tuple[Automorphism, ...]
    elements: tuple[Automorphism, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index_of(self) -> dict[tuple[int, ...], int]:
        return {a.perm: i for i, a in enumerate(self.elements)}

    @cached_property
    def composition(self) -> np.ndarray:
        """composition[i, j] = index of elements[i] after elements[j]."""
        s = self.order
        table = np.empty((s, s), dtype=np.int32)
        for i, a in enumerate(self.elements):
            pa = a.perm
            for j, b in enumerate(self.elements):
                table[i, j] = self.index_of[tuple(pa[x] for x in b.perm)]
        return _frozen(table)

    @cached_property
    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(b"ellrank-sigma-v1:")
        for a in sorted(self.elements, key=lambda a: a.perm):
            h.update(",".join(map(str, a.perm)).encode())
            h.update(b";")
        return h.hexdigest()


def trivial_sigma(group: FiniteGroup) -> SigmaAction:
    ident = Automorphism(tuple(range(group.order)))
    return SigmaAction((), (ident,))


def check_automorphism(group: FiniteGroup, perm) -> Automorphism:
    p = tuple(int(x) for x in perm)
    n = group.order
    if len(p) != n or sorted(p) != list(range(n)):
        raise ValidationError("automorphism candidate is not a permutation of the elements")
    if p[group.identity] != group.identity:
        raise ValidationError("automorphism candidate does not fix the identity")
    arr = np.asarray(p, dtype=np.int32)
    mapped = arr[group.mult]
    twisted = group.mult[arr[:, None], arr[None, :]]
    if not np.array_equal(mapped, twisted):
        a, b = map(int, np.argwhere(mapped != twisted)[0])
        raise ValidationError(
            f"candidate is not an automorphism: image of product fails at pair ({a}, {b})")
    return Automorphism(p)


def sigma_subgroup(group: FiniteGroup, auto_gens) -> SigmaAction:
    """Closure of the given automorphisms inside Aut(G), deterministic order."""
    gens = [check_automorphism(group, g) for g in auto_gens]
    ident = tuple(range(group.order))
    elements = [Automorphism(ident)]
    seen = {ident}
    frontier = [ident]
    while frontier:
        new_frontier = []
        for q in frontier:
            for g in gens:
                prod = tuple(g.perm[x] for x in q)
                if prod not in seen:
                    seen.add(prod)
                    elements.append(Automorphism(prod))
                    new_frontier.append(prod)
        frontier = new_frontier
    return SigmaAction(tuple(gens), tuple(elements))


def inversion_automorphism(group: FiniteGroup) -> Automorphism:
    """x -> x^{-1}; an automorphism exactly when the group is abelian."""
    if not group.is_abelian:
        raise ValidationError("inversion is only an automorphism of abelian groups")
    return Automorphism(tuple(int(x) for x in group.inverse))


def semidirect_product(group: FiniteGroup, sigma: SigmaAction, *,
                       order_cap: int = DEFAULT_ORDER_CAP):
    """G semidirect Sigma on pairs (g, s) with (g1,s1)(g2,s2) = (g1*s1(g2), s1 s2).

    Pair (g, s) has index g*|Sigma| + s. Returns the product group together
    with the index embeddings of G x {1} and {1} x Sigma.
    """
    n, s = group.order, sigma.order
    m = n * s
    if m > order_cap:
        raise ValidationError(f"semidirect product order {m} exceeds cap {order_cap}")
    perms = np.array([a.perm for a in sigma.elements], dtype=np.int32)
    comp = sigma.composition
    mult_g = group.mult
    table = np.empty((m, m), dtype=np.int32)
    for g1 in range(n):
        row_g = mult_g[g1]
        for s1 in range(s):
            # block of products against all (g2, s2)
            g_part = row_g[perms[s1]].astype(np.int64) * s     # shape (n,)
            block = g_part[:, None] + comp[s1][None, :]        # shape (n, s)
            table[g1 * s + s1] = block.reshape(m)
    labels = None
    if group.element_labels is not None:
        labels = [f"({group.element_labels[g]};{k})" for g in range(n) for k in range(s)]
    product = FiniteGroup(table, labels, validate=False, order_cap=order_cap)
    g_embed = tuple(g * s for g in range(n))
    sigma_embed = tuple(range(s))
    return product, g_embed, sigma_embed


def orbit_count(group: FiniteGroup, sigma: SigmaAction) -> int:
    """Number of orbits of Sigma acting on the underlying set of G."""
    n = group.order
    gens = [np.asarray(a.perm, dtype=np.int32) for a in sigma.generators]
    if not gens:
        return n
    seen = np.zeros(n, dtype=bool)
    count = 0
    for x in range(n):
        if seen[x]:
            continue
        count += 1
        stack = [x]
        seen[x] = True
        while stack:
            y = stack.pop()
            for g in gens:
                z = int(g[y])
                if not seen[z]:
                    seen[z] = True
                    stack.append(z)
    return count


def burnside_orbit_count(group: FiniteGroup, sigma: SigmaAction) -> int:
    """Independent cross-check: average number of fixed points over Sigma."""
    n = group.order
    idx = np.arange(n)
    total = sum(int(np.count_nonzero(np.asarray(a.perm) == idx)) for a in sigma.elements)
    if total % sigma.order != 0:
        raise ValueError("Burnside sum not divisible by |Sigma|")
    return total // sigma.order
