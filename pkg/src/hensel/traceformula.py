"""Exact verification of the finite-group trace identity.

For a finite group G with subgroup H, the character of the permutation
representation on G/H (fixed-coset count) is matched against the weighted
sum of conjugation-orbit sums over H-classes, the weight of a class being
the centralizer-size quotient |Z_G(h)| / |Z_H(h)|.  Checking equality on
every delta function is a full verification: the delta functions span all
test functions, and both sides are linear.

Groups are tables of permutations (0-based image tuples) closed under
composition; the spectral side is computed directly from cosets, never
through irreducible decompositions.
"""

from __future__ import annotations

from fractions import Fraction

Permutation = tuple[int, ...]


def identity_perm(degree: int) -> Permutation:
    return tuple(range(degree))


def perm_mul(a: Permutation, b: Permutation) -> Permutation:
    """Composition a after b: (a*b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def perm_inv(a: Permutation) -> Permutation:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Permutation from 1-based cycle notation, e.g. "(1 2)(3 4)".

    Separators inside a cycle may be spaces or commas; "()" and the empty
    string give the identity.
    """
    images = list(range(degree))
    text = text.strip()
    if text in ("", "()"):
        return tuple(images)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"malformed cycle string {text!r}")
    for chunk in text[1:-1].split(")("):
        entries = [int(t) for t in chunk.replace(",", " ").split()]
        if len(entries) != len(set(entries)):
            raise ValueError(f"repeated point in cycle {chunk!r}")
        if any(not 1 <= e <= degree for e in entries):
            raise ValueError(f"cycle {chunk!r} leaves the degree-{degree} domain")
        for a, b in zip(entries, entries[1:] + entries[:1]):
            images[a - 1] = b - 1
    return tuple(images)


class FiniteGroupTable:
    """A finite permutation group with composition tables built on demand."""

    def __init__(self, degree: int, elements, name: str | None = None):
        elements = sorted(set(elements))
        ident = identity_perm(degree)
        if ident not in elements:
            raise ValueError("identity permutation missing")
        for g in elements:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of 0..{degree - 1}")
        self.degree = degree
        self.elements = tuple(elements)
        self.name = name or f"group of order {len(elements)}"
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.identity = ident
        self._classes = None
        if any(perm_mul(a, b) not in self.index for a in elements for b in elements):
            raise ValueError("element list is not closed under composition")

    @classmethod
    def from_generators(cls, degree: int, generators, name=None):
        gens = [tuple(g) for g in generators]
        seen = {identity_perm(degree)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for g in gens:
                for h in frontier:
                    prod = perm_mul(g, h)
                    if prod not in seen:
                        seen.add(prod)
                        nxt.append(prod)
            frontier = nxt
        return cls(degree, seen, name)

    @classmethod
    def cyclic(cls, n: int):
        if n == 1:
            return cls(1, [(0,)], name="C1")
        gen = tuple((i + 1) % n for i in range(n))
        return cls.from_generators(n, [gen], name=f"C{n}")

    @classmethod
    def symmetric(cls, n: int):
        gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
        if n >= 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        return cls.from_generators(n, gens, name=f"S{n}")

    @classmethod
    def alternating(cls, n: int):
        if n < 3:
            return cls(n, [identity_perm(n)], name=f"A{n}")
        gens = []
        for i in range(n - 2):
            images = list(range(n))
            images[i], images[i + 1], images[i + 2] = images[i + 1], images[i + 2], images[i]
            gens.append(tuple(images))
        return cls.from_generators(n, gens, name=f"A{n}")

    @classmethod
    def dihedral(cls, n: int):
        """Symmetries of the regular n-gon on n points (order 2n)."""
        if n < 3:
            raise ValueError("dihedral groups here start at n = 3")
        rot = tuple((i + 1) % n for i in range(n))
        ref = tuple((n - i) % n for i in range(n))
        return cls.from_generators(n, [rot, ref], name=f"D{n}")

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroupTable({self.name}, order={len(self)})"

    def check_axioms(self) -> bool:
        """Exhaustive closure, identity, inverse and associativity check."""
        els = self.elements
        if any(perm_mul(a, b) not in self.index for a in els for b in els):
            return False
        if any(perm_inv(a) not in self.index for a in els):
            return False
        for a in els:
            for b in els:
                for c in els:
                    if perm_mul(perm_mul(a, b), c) != perm_mul(a, perm_mul(b, c)):
                        return False
        return True

    # -- conjugation structure ----------------------------------------------

    def conjugacy_classes(self) -> tuple:
        """Disjoint classes covering the group, ordered by least member index;
        members inside a class are ordered by index as well."""
        if self._classes is None:
            remaining = set(self.elements)
            classes = []
            while remaining:
                g = min(remaining, key=self.index.__getitem__)
                orbit = {perm_mul(u, perm_mul(g, perm_inv(u))) for u in self.elements}
                classes.append(tuple(sorted(orbit, key=self.index.__getitem__)))
                remaining -= orbit
            classes.sort(key=lambda cl: self.index[cl[0]])
            self._classes = tuple(classes)
        return self._classes

    def conjugacy_class_of(self, g: Permutation) -> tuple:
        for cl in self.conjugacy_classes():
            if g in cl:
                return cl
        raise ValueError("element not in the group")

    def centralizer(self, g: Permutation) -> list:
        return [u for u in self.elements if perm_mul(u, g) == perm_mul(g, u)]

    # -- subgroups ------------------------------------------------------------

    def subgroup_closure(self, generators) -> frozenset:
        gens = [tuple(g) for g in generators]
        for g in gens:
            if g not in self.index:
                raise ValueError(f"{g} is not an element of {self.name}")
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in gens:
                for h in frontier:
                    prod = perm_mul(g, h)
                    if prod not in seen:
                        seen.add(prod)
                        nxt.append(prod)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, subset) -> bool:
        subset = frozenset(subset)
        if self.identity not in subset or not subset <= set(self.elements):
            return False
        return all(perm_mul(a, perm_inv(b)) in subset for a in subset for b in subset)

    def all_subgroups(self) -> list:
        """Every subgroup, found by closing the cyclic subgroups under joins.
        Deterministic order: by size, then by sorted member indices."""
        cyclic = {self.subgroup_closure([g]) for g in self.elements}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            nxt = set()
            for h in frontier:
                for g in self.elements:
                    if g in h:
                        continue
                    joined = self.subgroup_closure(list(h) + [g])
                    if joined not in found:
                        found.add(joined)
                        nxt.add(joined)
            frontier = nxt
        found.add(frozenset([self.identity]))
        return sorted(
            found, key=lambda s: (len(s), sorted(self.index[g] for g in s))
        )

    def coset_reps(self, subgroup) -> list:
        """Representatives of the left cosets w * subgroup (least index)."""
        subgroup = frozenset(subgroup)
        seen = set()
        reps = []
        for w in self.elements:
            coset = frozenset(perm_mul(w, h) for h in subgroup)
            if coset not in seen:
                seen.add(coset)
                reps.append(w)
        return reps


# -- the two sides of the identity --------------------------------------------


def delta_function(group: FiniteGroupTable, g: Permutation) -> list:
    """The test function supported at g with value 1 (indexed by element)."""
    phi = [0] * len(group)
    phi[group.index[g]] = 1
    return phi


def orbital_pairing(group: FiniteGroupTable, gamma: Permutation, phi) -> Fraction:
    """Sum of phi over the conjugacy class of gamma in the full group."""
    if gamma not in group.index:
        raise ValueError("gamma is not an element of the group")
    return sum(phi[group.index[g]] for g in group.conjugacy_class_of(gamma))


def induced_trace(group: FiniteGroupTable, subgroup, g: Permutation) -> int:
    """Number of cosets w*H fixed by g, i.e. with w^{-1} g w in H.

    This is the character of the permutation representation on G/H at g;
    at the identity it is the index, and for the trivial subgroup it is the
    regular-representation character (|G| at 1, zero elsewhere).
    """
    subgroup = frozenset(subgroup)
    if not group.is_subgroup(subgroup):
        raise ValueError("subgroup argument is not a subgroup")
    count = 0
    for w in group.coset_reps(subgroup):
        if perm_mul(perm_inv(w), perm_mul(g, w)) in subgroup:
            count += 1
    return count


def _subgroup_classes(group: FiniteGroupTable, subgroup: frozenset) -> list:
    """Conjugacy classes of the subgroup under its own conjugation action."""
    members = sorted(subgroup, key=group.index.__getitem__)
    remaining = set(members)
    classes = []
    while remaining:
        h = min(remaining, key=group.index.__getitem__)
        orbit = {perm_mul(u, perm_mul(h, perm_inv(u))) for u in members}
        classes.append(sorted(orbit, key=group.index.__getitem__))
        remaining -= orbit
    return classes


def geometric_side(group: FiniteGroupTable, subgroup, phi) -> Fraction:
    """Sum over H-classes of |Z_G(h)|/|Z_H(h)| times the orbit sum of phi."""
    subgroup = frozenset(subgroup)
    if not group.is_subgroup(subgroup):
        raise ValueError("subgroup argument is not a subgroup")
    total = Fraction(0)
    for cl in _subgroup_classes(group, subgroup):
        h = cl[0]
        zg = len(group.centralizer(h))
        zh = sum(
            1
            for u in subgroup
            if perm_mul(u, h) == perm_mul(h, u)
        )
        total += Fraction(zg, zh) * orbital_pairing(group, h, phi)
    return total


def verify_trace_formula(group: FiniteGroupTable, subgroup):
    """Check the identity on the full delta-function basis.

    By linearity, equality on every delta function proves it for all test
    functions.  Returns (True, None) or (False, first failing element).
    """
    subgroup = frozenset(subgroup)
    if not group.is_subgroup(subgroup):
        raise ValueError("subgroup argument is not a subgroup")
    for g in group.elements:
        spectral = induced_trace(group, subgroup, g)
        geometric = geometric_side(group, subgroup, delta_function(group, g))
        if spectral != geometric:
            return False, g
    return True, None


def catalog() -> list:
    """The built-in verification battery: (name, group) pairs."""
    groups = [FiniteGroupTable.cyclic(n) for n in range(1, 13)]
    groups += [
        FiniteGroupTable.symmetric(3),
        FiniteGroupTable.symmetric(4),
        FiniteGroupTable.alternating(4),
        FiniteGroupTable.dihedral(4),
    ]
    return [(g.name, g) for g in groups]
