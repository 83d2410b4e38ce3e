"""Constructive cancellation laws on finite sets.

Everything here manipulates explicit witnesses over tagged elements, so the
disjoint unions in statements like "A + mC injects into B + nC" are ordinary
finite sets whose members remember which summand they came from. The
infinite-set escape hatches of the general theory (sets that get swallowed)
are provably empty in the finite case; they are asserted empty at runtime,
and the genuinely infinite machinery lives in the chains module instead.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Iterable, NamedTuple

from .core import BijectionWitness, InjectionWitness, verify_bijection, verify_injection
from .errors import ContractViolationError, InvalidWitnessError, MalformedWitnessError
from .division import LONG, SHORT, Schedule, long_divide, short_divide


class TaggedElement(NamedTuple):
    """An element of a disjoint union: (summand tag, payload)."""

    tag: str
    payload: object


def tagged_union(*parts) -> tuple:
    """Build the carrier of a disjoint union from (tag, elements) parts."""
    out = []
    for tag, elems in parts:
        out.extend(TaggedElement(tag, x) for x in elems)
    return tuple(out)


class CbVariant(str, Enum):
    GIVE_FORWARD = "give_forward"
    CLAW_BACK = "claw_back"


class EuclidStep(str, Enum):
    NAIVE = "naive"  # subtract one multiple of m per recursion step
    MULTI = "multi"  # subtract the largest multiple km < n per step


def _closure(frontier: Iterable, step: dict) -> set:
    out = set(frontier)
    stack = list(out)
    while stack:
        x = stack.pop()
        y = step[x]
        if y not in out:
            out.add(y)
            stack.append(y)
    return out


def cb_combine(
    f: InjectionWitness,
    g: InjectionWitness,
    variant: CbVariant = CbVariant.GIVE_FORWARD,
) -> BijectionWitness:
    """Weld injections f: A -> B and g: B -> A into a bijection A <-> B.

    Reduce to the self-map f' = g o f on A, whose image sits inside
    g(B). In the give-forward variant, elements outside g(B) pass their
    pairing forward along f'-paths and everything those paths reach moves
    with them; in the claw-back variant everyone moves first and elements
    of g(B) that f' misses pull their pairing back, freezing their forward
    path. Either way each a ends up paired with f(a) or with g^-1(a); the
    two variants differ only on the cyclic orbits of f'.
    """
    if not verify_injection(f):
        raise InvalidWitnessError("cb_combine: f is not injective")
    if not verify_injection(g):
        raise InvalidWitnessError("cb_combine: g is not injective")
    if set(f.codomain) != set(g.domain) or set(g.codomain) != set(f.domain):
        raise MalformedWitnessError("cb_combine: witnesses are not A->B and B->A over the same sets")

    a_set = f.domain
    fprime = {a: g.map[f.map[a]] for a in a_set}
    g_image = {g.map[b] for b in g.domain}

    if variant is CbVariant.GIVE_FORWARD:
        movers = _closure((a for a in a_set if a not in g_image), fprime)
        h = {a: fprime[a] if a in movers else a for a in a_set}
    else:
        hit = set(fprime.values())
        stayers = _closure((a for a in a_set if a in g_image and a not in hit), fprime)
        h = {a: a if a in stayers else fprime[a] for a in a_set}

    g_inv = {g.map[b]: b for b in g.domain}
    mapping = {a: g_inv[h[a]] for a in a_set}
    out = BijectionWitness(f.domain, f.codomain, mapping, provenance=f"cb_combine({variant.value})")
    if not verify_bijection(out):
        raise InvalidWitnessError("cb_combine produced a non-bijection; inputs were inconsistent")
    return out


# ---------------------------------------------------------------------------
# Subtraction: peel shared summands off both sides of an injection.


def _peel(h: InjectionWitness, matched: dict) -> InjectionWitness:
    """Remove matched summands from both sides of h by path-following.

    ``matched`` maps a codomain tag to the domain tag holding the same
    copy; whenever an image lands in a matched summand the walk re-enters
    the domain at that copy and continues. Injectivity of h means no path
    can revisit an element, so every walk exits into the kept codomain.
    """
    dom_tags = set(matched.values())
    cod_tags = set(matched)
    for cod_tag, dom_tag in matched.items():
        dom_payloads = {x.payload for x in h.domain if x.tag == dom_tag}
        cod_payloads = {y.payload for y in h.codomain if y.tag == cod_tag}
        if dom_payloads != cod_payloads:
            raise MalformedWitnessError(
                f"matched summands {dom_tag!r}/{cod_tag!r} do not carry the same set"
            )
    kept_domain = tuple(x for x in h.domain if x.tag not in dom_tags)
    kept_codomain = tuple(y for y in h.codomain if y.tag not in cod_tags)
    mapping = {}
    for start in kept_domain:
        seen = set()
        x = h.map[start]
        while x.tag in cod_tags:
            if x in seen:
                raise InvalidWitnessError(f"peel path from {start} revisits {x}; h is not injective")
            seen.add(x)
            x = h.map[TaggedElement(matched[x.tag], x.payload)]
        mapping[start] = x
    out = InjectionWitness(kept_domain, kept_codomain, mapping, provenance="peel")
    if not verify_injection(out):
        raise InvalidWitnessError("peeling produced a non-injection; input was not injective")
    return out


def subtract(h: InjectionWitness, c_tag: str = "C") -> InjectionWitness:
    """From h: A + C -> B + C, produce an injection A -> B.

    Follows a, h(a), h(h(a)), ... while images land in the shared summand;
    the first image outside it is the result. No finite nonempty set can be
    swallowed, so the result is total on A.
    """
    if not verify_injection(h):
        raise InvalidWitnessError("subtract needs an injective witness")
    return _peel(h, {c_tag: c_tag})


def subtract_multi(h: InjectionWitness, m: int, n: int, prefix: str = "C") -> InjectionWitness:
    """From h: A + mC -> B + nC with m < n, produce A -> B + (n-m)C.

    Copies are tagged ``C0 .. C{m-1}`` in the domain and ``C0 .. C{n-1}``
    in the codomain. Each recursion step peels the top ceil(m/2) domain
    copies against the top codomain copies, halving the copy count, so the
    recursion depth is logarithmic in m.
    """
    if m >= n:
        raise ContractViolationError(f"subtract_multi needs m < n, got {m} >= {n}")
    if m < 0:
        raise ContractViolationError("copy counts must be nonnegative")
    if m == 0:
        return h
    if not verify_injection(h):
        raise InvalidWitnessError("subtract_multi needs an injective witness")
    cur = h
    mm, nn = m, n
    while mm > 0:
        k = mm - mm // 2
        matched = {f"{prefix}{nn - k + j}": f"{prefix}{mm - k + j}" for j in range(k)}
        cur = _peel(cur, matched)
        mm -= k
        nn -= k
    return InjectionWitness(
        cur.domain, cur.codomain, cur.map, provenance=f"subtract_multi(m={m}, n={n})"
    )


# ---------------------------------------------------------------------------
# Euclidean division of a bijection m x A <-> n x B with gcd(m, n) = 1.


def _pair_witness(domain, codomain, mapping, provenance=None) -> BijectionWitness:
    out = BijectionWitness(tuple(domain), tuple(codomain), mapping, provenance=provenance)
    if not verify_bijection(out):
        raise InvalidWitnessError(f"{provenance or 'construction'} produced a non-bijection")
    return out


def _divide_injection(m, kb_elems, a_elems, mapping, method):
    domain = tuple((i, x) for i in range(m) for x in kb_elems)
    codomain = tuple((i, a) for i in range(m) for a in a_elems)
    witness = InjectionWitness(domain, codomain, mapping, provenance="euclid embed")
    if method == LONG:
        return long_divide(m, kb_elems, a_elems, witness, Schedule.halving()).result
    return short_divide(m, kb_elems, a_elems, witness).result


def euclid_divide(
    m: int,
    n: int,
    a_elems,
    b_elems,
    big: BijectionWitness,
    step: EuclidStep = EuclidStep.NAIVE,
    method: str = SHORT,
) -> tuple:
    """Solve m x A <-> n x B with gcd(m, n) = 1 for a common block R.

    Returns (R, a_wit, b_wit) with a_wit: A <-> n x R and b_wit: B <-> m x R.
    The recursion divides out m, splits A into an image of k copies of B
    plus a remainder C, peels the matched copies, and recurses on C against
    B with the reduced multiplier. The leftover set the general theory
    would swallow is exactly empty at every finite step and is asserted so.
    """
    if m < 1 or n < 1:
        raise ContractViolationError("multipliers must be >= 1")
    if math.gcd(m, n) != 1:
        raise ContractViolationError(f"gcd({m}, {n}) != 1")
    a_elems = tuple(a_elems)
    b_elems = tuple(b_elems)
    if m * len(a_elems) != n * len(b_elems):
        raise ContractViolationError(
            f"size mismatch: {m}*|A|={m * len(a_elems)} but {n}*|B|={n * len(b_elems)}"
        )
    if not verify_bijection(big):
        raise InvalidWitnessError("euclid_divide needs a bijective witness")
    if set(big.domain) != {(i, a) for i in range(m) for a in a_elems}:
        raise MalformedWitnessError("witness domain is not m x A")
    if set(big.codomain) != {(j, b) for j in range(n) for b in b_elems}:
        raise MalformedWitnessError("witness codomain is not n x B")

    if m == 1:
        r_elems = b_elems
        a_wit = _pair_witness(
            a_elems,
            big.codomain,
            {a: big.map[(0, a)] for a in a_elems},
            provenance="euclid base A<->nR",
        )
        b_wit = _pair_witness(
            b_elems,
            tuple((0, b) for b in b_elems),
            {b: (0, b) for b in b_elems},
            provenance="euclid base B<->1R",
        )
        return r_elems, a_wit, b_wit

    if m > n:
        inverse = BijectionWitness(
            big.codomain, big.domain, {v: k for k, v in big.map.items()}, provenance="flip"
        )
        r_elems, b_wit, a_wit = euclid_divide(n, m, b_elems, a_elems, inverse, step, method)
        return r_elems, a_wit, b_wit

    k = n // m if step is EuclidStep.MULTI else 1
    km = k * m
    inv = {v: key for key, v in big.map.items()}

    # 1. km x B injects into m x A through the bijection; divide out m.
    kb_elems = tuple((j, b) for j in range(k) for b in b_elems)
    embed = {
        (i, (j, b)): inv[(i * k + j, b)] for i in range(m) for j in range(k) for b in b_elems
    }
    b_to_a = _divide_injection(m, kb_elems, a_elems, embed, method)

    # 2. Split A into the image of k x B plus the remainder C.
    back = {b_to_a.map[jb]: jb for jb in kb_elems}
    c_elems = tuple(a for a in a_elems if a not in back)

    # 3. m x (kB + C) <-> n x B; peel the km matched copies of B to get
    #    a bijection m x C <-> (n - km) x B. E (the unmatched remainder)
    #    must come out empty here, and _pair_witness checks exactly that.
    dom = []
    mapping = {}
    for i in range(m):
        for j, b in kb_elems:
            x = TaggedElement(f"B{i * k + j}", b)
            j2, b2 = big.map[(i, b_to_a.map[(j, b)])]
            dom.append(x)
            mapping[x] = TaggedElement(f"B{j2}", b2)
        for c in c_elems:
            x = TaggedElement(f"C{i}", c)
            j2, b2 = big.map[(i, c)]
            dom.append(x)
            mapping[x] = TaggedElement(f"B{j2}", b2)
    cod = tuple(TaggedElement(f"B{c2}", b) for c2 in range(n) for b in b_elems)
    h2 = InjectionWitness(tuple(dom), cod, mapping, provenance="euclid merge")
    matched = {f"B{n - km + c2}": f"B{c2}" for c2 in range(km)}
    peeled = _peel(h2, matched)

    mc_domain = tuple((i, c) for i in range(m) for c in c_elems)
    nb_codomain = tuple((c2, b) for c2 in range(n - km) for b in b_elems)
    mc_to_b = _pair_witness(
        mc_domain,
        nb_codomain,
        {
            (int(x.tag[1:]), x.payload): (int(y.tag[1:]), y.payload)
            for x, y in ((x, peeled.map[x]) for x in peeled.domain)
        },
        provenance="euclid peel mC<->(n-km)B",
    )

    # 4. Recurse with the reduced multiplier pair (gcd is preserved).
    r_elems, c_wit, b_wit = euclid_divide(m, n - km, c_elems, b_elems, mc_to_b, step, method)

    # 5. Reassemble A <-> n x R from the split plus both recursive witnesses.
    a_map = {}
    for a in a_elems:
        if a in back:
            j, b = back[a]
            i2, r = b_wit.map[b]
            a_map[a] = (j * m + i2, r)
        else:
            i2, r = c_wit.map[a]
            a_map[a] = (km + i2, r)
    a_wit = _pair_witness(
        a_elems,
        tuple((i, r) for i in range(n) for r in r_elems),
        a_map,
        provenance=f"euclid_divide({m}, {n}, step={step.value})",
    )
    return r_elems, a_wit, b_wit


def general_divide(
    m: int,
    n: int,
    a_elems,
    b_elems,
    big: BijectionWitness,
    step: EuclidStep = EuclidStep.NAIVE,
    method: str = SHORT,
) -> tuple:
    """Solve m x A <-> n x B for arbitrary m, n with d = gcd(m, n).

    Divides both sides by d first, then runs the coprime case; returns
    (R, A <-> (n/d) x R, B <-> (m/d) x R).
    """
    from .division import divide_bijection

    d = math.gcd(m, n)
    a_elems = tuple(a_elems)
    b_elems = tuple(b_elems)
    if d == 1:
        return euclid_divide(m, n, a_elems, b_elems, big, step, method)
    ma, nb = m // d, n // d
    a2 = tuple((i, a) for i in range(ma) for a in a_elems)
    b2 = tuple((j, b) for j in range(nb) for b in b_elems)
    mapping = {}
    for (i, a), (j, b) in big.map.items():
        mapping[(i // ma, (i % ma, a))] = (j // nb, (j % nb, b))
    wrapped = BijectionWitness(
        tuple((di, x) for di in range(d) for x in a2),
        tuple((dj, y) for dj in range(d) for y in b2),
        mapping,
        provenance="gcd wrap",
    )
    reduced = divide_bijection(d, a2, b2, wrapped, method=method)
    return euclid_divide(ma, nb, a_elems, b_elems, reduced, step, method)


def scaled_cancel(
    na_leq_nb: InjectionWitness,
    b_leq_a: InjectionWitness,
    schedule: Schedule = Schedule.naive(),
) -> BijectionWitness:
    """From n x A injecting into n x B and B injecting into A, a bijection A <-> B.

    Divides the first witness down to an injection A -> B, then welds it
    with the second via the pairing construction.
    """
    if not verify_injection(na_leq_nb) or not verify_injection(b_leq_a):
        raise InvalidWitnessError("scaled_cancel needs injective witnesses")
    b_elems = tuple(b_leq_a.domain)
    a_elems = tuple(b_leq_a.codomain)
    suits = {i for (i, _a) in na_leq_nb.domain}
    n = max(suits) + 1 if suits else 1
    if set(na_leq_nb.domain) != {(i, a) for i in range(n) for a in a_elems}:
        raise MalformedWitnessError("first witness domain is not n x A for the A of the second")
    if set(na_leq_nb.codomain) != {(j, b) for j in range(n) for b in b_elems}:
        raise MalformedWitnessError("first witness codomain is not n x B for the B of the second")
    a_to_b = long_divide(n, a_elems, b_elems, na_leq_nb, schedule).result
    return cb_combine(a_to_b, b_leq_a, CbVariant.GIVE_FORWARD)
