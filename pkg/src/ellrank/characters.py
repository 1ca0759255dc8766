"""Character tables of finite groups by the modular Dixon-Schneider method.

All character values live in a prime field F_p with p = 1 mod exponent(G)
and p > |G|^2. Every quantity consumed downstream (inner products,
multiplicities, fixed-space dimensions) is a rational integer bounded by
|G|, so it lifts uniquely from its residue; nothing here ever touches
cyclotomic or floating arithmetic.
"""

from __future__ import annotations

import json
import os
import warnings
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import InternalInvariantError, LiftRangeError, ValidationError
from .groups import ClassPartition, FiniteGroup, conjugacy_classes
from .modmath import (charpoly_mod, distinct_roots_mod, find_field_prime, int_sqrt_bound,
                      inv_mod, lift_small_sqrt, matmul_mod, nullspace_mod, rref_mod)

CACHE_ENV_VAR = "ELLRANK_CACHE_DIR"
CACHE_VERSION = 1

_TABLE_MEMO: dict[tuple[str, int], "CharacterTable"] = {}


class CharacterTable:
    """Irreducible characters of a group as residues mod a Dixon prime.

    values[i, k] is the value of the i-th irreducible at the k-th conjugacy
    class; rows are sorted by (degree, lexicographic residue order).
    """

    def __init__(self, group: FiniteGroup, prime: int, classes: ClassPartition,
                 values: np.ndarray, degrees: tuple[int, ...]):
        self.group = group
        self.prime = prime
        self.classes = classes
        values = np.asarray(values, dtype=np.int64)
        values.setflags(write=False)
        self.values = values
        self.degrees = degrees

    @property
    def n_irreducibles(self) -> int:
        return self.values.shape[0]

    @cached_property
    def class_sizes(self) -> np.ndarray:
        return np.array(self.classes.sizes, dtype=np.int64)

    @cached_property
    def class_of(self) -> np.ndarray:
        return np.array(self.classes.class_of, dtype=np.int64)

    @cached_property
    def inverse_class(self) -> np.ndarray:
        return np.array(self.classes.inverse_class, dtype=np.int64)

    @cached_property
    def _row_lookup(self) -> dict[tuple[int, ...], int]:
        return {tuple(int(v) for v in row): i for i, row in enumerate(self.values)}

    @cached_property
    def dual_permutation(self) -> tuple[int, ...]:
        """Involution alpha -> conjugate alpha, via the class-inversion permutation."""
        out = []
        for i in range(self.n_irreducibles):
            conj = tuple(int(self.values[i, k]) for k in self.inverse_class)
            j = self._row_lookup.get(conj)
            if j is None:
                raise InternalInvariantError("conjugate of an irreducible is missing from the table")
            out.append(j)
        return tuple(out)

    def irreducible_row(self, i: int) -> np.ndarray:
        return self.values[i]

    def __repr__(self):
        return (f"CharacterTable(order={self.group.order}, "
                f"classes={self.classes.count}, prime={self.prime})")


# ---------------------------------------------------------------------------
# Dixon-Schneider construction

class _ClassMatrices:
    """Lazy class-multiplication matrices A_i[j, k] = a_{ij}^k over F_p."""

    def __init__(self, group: FiniteGroup, part: ClassPartition, p: int):
        self.group = group
        self.part = part
        self.p = p
        self.count = part.count
        self.class_of = np.array(part.class_of, dtype=np.int64)
        self.sizes = np.array(part.sizes, dtype=np.int64)
        self._base = self.class_of * self.count

    def matrix(self, i: int) -> np.ndarray:
        c = self.count
        counts = np.zeros(c * c, dtype=np.int64)
        mult = self.group.mult
        for x in self.part.classes[i]:
            counts += np.bincount(self._base + self.class_of[mult[x]], minlength=c * c)
        a = counts.reshape(c, c) // self.sizes[None, :]
        return a % self.p


def _split_by_matrix(spaces, a, p):
    """Refine a list of (rref_basis, pivots) invariant subspaces into common
    eigenspaces of the operator with matrix a (acting on column vectors)."""
    out = []
    for basis, pivots in spaces:
        dim = basis.shape[0]
        if dim == 1:
            out.append((basis, pivots))
            continue
        images = matmul_mod(basis, a.T, p)
        coords = images[:, pivots]
        if not np.array_equal(matmul_mod(coords, basis, p) % p, images % p):
            raise InternalInvariantError("class-sum operator left an invariant subspace")
        op = coords.T % p
        roots = distinct_roots_mod(charpoly_mod(op, p), p)
        found = 0
        for lam in roots:
            shifted = (op - lam * np.eye(dim, dtype=np.int64)) % p
            kernel = nullspace_mod(shifted, p)
            if kernel.shape[0] == 0:
                continue
            sub = matmul_mod(kernel, basis, p)
            sub_rref, sub_piv = rref_mod(sub, p)
            out.append((sub_rref, sub_piv))
            found += kernel.shape[0]
        if found != dim:
            raise InternalInvariantError("eigenspace splitting failed to fully diagonalize")
    return out


def _dixon_values(group: FiniteGroup, part: ClassPartition, p: int) -> np.ndarray:
    c = part.count
    mats = _ClassMatrices(group, part, p)
    identity_basis, identity_piv = rref_mod(np.eye(c, dtype=np.int64), p)
    spaces = [(identity_basis, identity_piv)]
    for i in range(1, c):
        if all(b.shape[0] == 1 for b, _ in spaces):
            break
        spaces = _split_by_matrix(spaces, mats.matrix(i), p)
    if any(b.shape[0] != 1 for b, _ in spaces):
        raise InternalInvariantError("class-sum matrices did not separate all characters")

    order = group.order
    sizes = mats.sizes
    inv_class = np.array(part.inverse_class, dtype=np.int64)
    inv_sizes = np.array([inv_mod(int(s), p) for s in sizes], dtype=np.int64)
    sqrt_bound = int_sqrt_bound(order)
    rows = []
    for basis, _ in spaces:
        w = basis[0] % p
        if w[0] == 0:
            raise InternalInvariantError("central character has zero identity coordinate")
        w = w * inv_mod(int(w[0]), p) % p
        pairing = int(np.sum(w * w[inv_class] % p * inv_sizes % p) % p)
        deg_sq = order * inv_mod(pairing, p) % p
        degree = lift_small_sqrt(deg_sq, p, sqrt_bound)
        values = degree * w % p * inv_sizes % p
        rows.append((degree, tuple(int(v) for v in values)))
    rows.sort()
    return np.array([r[1] for r in rows], dtype=np.int64)


def _verify_table(group: FiniteGroup, part: ClassPartition, p: int,
                  values: np.ndarray) -> tuple[int, ...]:
    c = part.count
    if values.shape != (c, c):
        raise InternalInvariantError("irreducible count differs from class count")
    degrees = []
    for i in range(c):
        d = int(values[i, 0])
        if not 0 < d <= int_sqrt_bound(group.order) or d * d > group.order:
            raise InternalInvariantError(f"identity value {d} is not a plausible degree")
        degrees.append(d)
    if sum(d * d for d in degrees) != group.order:
        raise InternalInvariantError("degree squares do not sum to the group order")
    if any(group.order % d != 0 for d in degrees):
        raise InternalInvariantError("a degree does not divide the group order")
    sizes = np.array(part.sizes, dtype=np.int64)
    inv_class = list(part.inverse_class)
    gram = matmul_mod(values * sizes[None, :] % p, values[:, inv_class].T, p)
    if not np.array_equal(gram, (group.order % p) * np.eye(c, dtype=np.int64) % p):
        raise InternalInvariantError("row orthogonality fails mod p")
    return tuple(degrees)


def character_table(group: FiniteGroup, *, prime: int | None = None,
                    cache_dir: str | os.PathLike | None = None) -> CharacterTable:
    """The character table of the group, mod the smallest valid prime unless
    one is pinned (a pinned prime still must satisfy the Dixon conditions).

    Tables are memoized per (group, prime); the canonical-prime table is
    additionally persisted to a JSON disk cache when a cache directory is
    configured (argument or the ELLRANK_CACHE_DIR environment variable).
    """
    canonical_prime = find_field_prime(group.order, group.exponent)
    pinned = prime is not None and prime != canonical_prime
    p = canonical_prime if prime is None else int(prime)
    if pinned:
        if p <= group.order ** 2 or (p - 1) % group.exponent != 0:
            raise ValidationError(
                f"pinned prime {p} violates the field conditions for order {group.order}")
    memo_key = (group.content_hash, p)
    cached = _TABLE_MEMO.get(memo_key)
    if cached is not None:
        return cached

    part = conjugacy_classes(group)
    table = None
    directory = _resolve_cache_dir(cache_dir)
    if directory is not None and not pinned:
        table = _load_cached_table(directory, group, part, p)
    if table is None:
        values = _dixon_values(group, part, p)
        degrees = _verify_table(group, part, p, values)
        table = CharacterTable(group, p, part, values, degrees)
        if directory is not None and not pinned:
            _store_cached_table(directory, table)
    _TABLE_MEMO[memo_key] = table
    return table


def _resolve_cache_dir(cache_dir) -> Path | None:
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get(CACHE_ENV_VAR)
    return Path(env) if env else None


def _cache_path(directory: Path, group_hash: str) -> Path:
    return directory / f"{group_hash}.json"


def _store_cached_table(directory: Path, table: CharacterTable) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    doc = {
        "version": CACHE_VERSION,
        "group_hash": table.group.content_hash,
        "order": table.group.order,
        "prime": str(table.prime),
        "classes": [list(c) for c in table.classes.classes],
        "degrees": list(table.degrees),
        "values": [[str(int(v)) for v in row] for row in table.values],
    }
    path = _cache_path(directory, table.group.content_hash)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(doc, sort_keys=True))
    tmp.replace(path)


def _load_cached_table(directory: Path, group: FiniteGroup, part: ClassPartition,
                       p: int) -> CharacterTable | None:
    path = _cache_path(directory, group.content_hash)
    if not path.is_file():
        return None
    try:
        doc = json.loads(path.read_text())
        if (doc.get("version") != CACHE_VERSION
                or doc.get("group_hash") != group.content_hash
                or doc.get("order") != group.order
                or int(doc["prime"]) != p
                or [list(c) for c in part.classes] != doc["classes"]):
            return None
        values = np.array([[int(v) for v in row] for row in doc["values"]], dtype=np.int64)
        degrees = _verify_table(group, part, p, values)
        if tuple(doc["degrees"]) != degrees:
            return None
        return CharacterTable(group, p, part, values, degrees)
    except (KeyError, ValueError, InternalInvariantError, json.JSONDecodeError):
        warnings.warn(f"character-table cache entry {path.name} failed revalidation; recomputing")
        return None


# ---------------------------------------------------------------------------
# Integer pairings

def lift_integer(residue: int, p: int, bound: int, what: str = "inner product") -> int:
    """Lift a residue known to represent an integer in [0, bound]."""
    r = int(residue) % p
    if r > bound:
        raise LiftRangeError(f"{what} lift {r} exceeds bound {bound} (precondition violated)")
    return r


def inner_product(table: CharacterTable, a, b, *, bound: int | None = None) -> int:
    """Exact integer (1/|G|) sum_c |c| a(c) b(c^{-1}), lifted from mod p.

    Both arguments are class functions given as residues mod the table prime;
    their true complex pairing must be a rational integer in [0, bound]."""
    p = table.prime
    av = np.asarray(a, dtype=np.int64) % p
    bv = np.asarray(b, dtype=np.int64) % p
    if av.shape != (table.classes.count,) or bv.shape != (table.classes.count,):
        raise ValidationError("class function has the wrong number of classes")
    total = int(np.sum(table.class_sizes * av % p * bv[table.inverse_class] % p) % p)
    value = total * inv_mod(table.group.order, p) % p
    return lift_integer(value, p, table.group.order if bound is None else bound)


def restriction_matrix(table_big: CharacterTable, table_small: CharacterTable,
                       embed) -> tuple[tuple[int, ...], ...]:
    """M[j][i] = multiplicity of the j-th irreducible of the subgroup in the
    restriction of the i-th irreducible of the big group.

    Both tables must share the same prime: residues mod different primes are
    incomparable, so the subgroup table is built at the parent's prime."""
    if table_big.prime != table_small.prime:
        raise ValidationError(
            "restriction requires both character tables at the same prime; "
            "build the subgroup table with prime=parent.prime")
    p = table_big.prime
    embed = np.asarray(embed, dtype=np.int64)
    if embed.shape != (table_small.group.order,):
        raise ValidationError("embedding has the wrong length")
    reps = np.array(table_small.classes.representatives, dtype=np.int64)
    big_cls = table_big.class_of[embed[reps]]
    restricted = table_big.values[:, big_cls]  # rows: big irreducibles over small classes
    scaled = table_small.values[:, table_small.inverse_class] * table_small.class_sizes[None, :] % p
    inv_order = inv_mod(table_small.group.order, p)
    pairings = matmul_mod(scaled, restricted.T, p) * inv_order % p
    rows = []
    for j in range(table_small.n_irreducibles):
        row = tuple(
            lift_integer(int(pairings[j, i]), p, table_big.degrees[i], "restriction multiplicity")
            for i in range(table_big.n_irreducibles))
        rows.append(row)
    return tuple(rows)


def coset_character(table_big: CharacterTable, sigma_embed) -> tuple[int, ...]:
    """Multiplicities <chi_i, c> of the coset character attached to the
    embedded subgroup, via Frobenius reciprocity: average chi_i over it."""
    p = table_big.prime
    embed = np.asarray(sigma_embed, dtype=np.int64)
    cls = table_big.class_of[embed]
    size_inv = inv_mod(len(embed), p)
    out = []
    for i in range(table_big.n_irreducibles):
        s = int(np.sum(table_big.values[i, cls]) % p) * size_inv % p
        out.append(lift_integer(s, p, table_big.degrees[i], "coset multiplicity"))
    coset_count = table_big.group.order // len(embed)
    if sum(d * m for d, m in zip(table_big.degrees, out)) != coset_count:
        raise InternalInvariantError("coset character multiplicities do not sum to the coset count")
    return tuple(out)


def fixed_subspace_dim(table: CharacterTable, alpha: int, subgroup) -> int:
    """dim of the subspace of the alpha-th irreducible fixed by the subgroup."""
    if not 0 <= alpha < table.n_irreducibles:
        raise ValidationError(f"irreducible index {alpha} out of range")
    h = [int(x) for x in subgroup]
    _check_subgroup(table.group, h)
    p = table.prime
    cls = table.class_of[np.asarray(h, dtype=np.int64)]
    s = int(np.sum(table.values[alpha, cls]) % p) * inv_mod(len(h), p) % p
    return lift_integer(s, p, table.degrees[alpha], "fixed-space dimension")


def _check_subgroup(group: FiniteGroup, members: list[int]) -> None:
    if not members:
        raise ValidationError("a subgroup cannot be empty")
    mset = set(members)
    if len(mset) != len(members):
        raise ValidationError("subgroup list has repeated elements")
    if group.identity not in mset:
        raise ValidationError("subgroup does not contain the identity")
    for a in members:
        if group.inv(a) not in mset:
            raise ValidationError(f"subgroup not closed under inverse at element {a}")
        for b in members:
            if group.mul(a, b) not in mset:
                raise ValidationError(f"subgroup not closed under product at ({a}, {b})")


def cyclic_subgroup(group: FiniteGroup, generator: int) -> tuple[int, ...]:
    """Elements of the cyclic subgroup generated by one element."""
    if not 0 <= generator < group.order:
        raise ValidationError(f"generator index {generator} out of range")
    out = [group.identity]
    x = generator
    while x != group.identity:
        out.append(x)
        x = group.mul(x, generator)
    return tuple(out)


def column_orthogonality_holds(table: CharacterTable) -> bool:
    """Second orthogonality: sum_i chi_i(c) chi_i(c'^{-1}) = delta |G|/|c| mod p."""
    p = table.prime
    x = table.values
    gram = matmul_mod(x.T, x[:, table.inverse_class], p)
    expect = np.zeros_like(gram)
    for k in range(table.classes.count):
        expect[k, k] = table.group.order * inv_mod(int(table.class_sizes[k]), p) % p
    return bool(np.array_equal(gram % p, expect))
