"""Exhaustive law suites over finite carriers.

Each function sweeps one family of identities over every element, pair or
filter of its subject and returns a :class:`LawReport` with instance counts
and witnesses.  ``boolean_monoid_suite`` bundles the order/filter laws that
any verified boolean inverse monoid must satisfy; the CLI exposes the same
suites through ``check --laws``.
"""

from __future__ import annotations

from .duality import clifford_check, verify_basic_open_laws
from .filters import (
    all_filters,
    enumerate_ultrafilters,
    filter_dom,
    filter_product,
    prime_property_check,
)
from .inverse_core import InverseMonoid, iter_bits, mask_of
from .reporting import LawReport


def order_meet_laws(monoid: InverseMonoid) -> LawReport:
    """Meets against compatibility: a pair is compatible exactly when its
    meet exists with dom/ran splitting; joins split dom/ran; products
    distribute over existing meets."""
    report = LawReport("order-meet laws")
    n = monoid.n

    law = report.new("compatible-iff-meet-splits")
    for s in range(n):
        for t in range(n):
            law.tick()
            m = monoid.meet(s, t)
            splits = (m is not None
                      and monoid.dom(m) == monoid.meet(monoid.dom(s), monoid.dom(t))
                      and monoid.ran(m) == monoid.meet(monoid.ran(s), monoid.ran(t)))
            if splits != monoid.compatible(s, t):
                law.fail((s, t))

    law = report.new("join-splits-dom-ran")
    for s in range(n):
        for t in range(n):
            j = monoid.join(s, t)
            if j is None:
                continue
            law.tick()
            if (monoid.dom(j) != monoid.join(monoid.dom(s), monoid.dom(t))
                    or monoid.ran(j) != monoid.join(monoid.ran(s), monoid.ran(t))):
                law.fail((s, t))

    law = report.new("products-distribute-over-meets")
    for s in range(n):
        for t in range(n):
            m = monoid.meet(s, t)
            if m is None:
                continue
            for u in range(n):
                law.tick()
                left = monoid.meet(monoid.product(u, s), monoid.product(u, t))
                right = monoid.meet(monoid.product(s, u), monoid.product(t, u))
                if left != monoid.product(u, m) or right != monoid.product(m, u):
                    law.fail((s, t, u))
    return report


def local_complement_laws(monoid: InverseMonoid) -> LawReport:
    """Down-sets are boolean (order-isomorphic to the idempotent down-set
    through dom), relative complements are unique, and non-comparable pairs
    admit a separating element below."""
    monoid.require_boolean()
    report = LawReport("local complement laws")
    n = monoid.n

    law = report.new("downset-boolean-via-dom")
    for s in range(n):
        law.tick()
        down = list(iter_bits(monoid.down_mask(s)))
        image = sorted(monoid.dom(x) for x in down)
        if image != sorted(iter_bits(monoid.down_mask(monoid.dom(s)))):
            law.fail((s,))
            continue
        for x in down:
            for y in down:
                if monoid.leq(x, y) != monoid.leq(monoid.dom(x), monoid.dom(y)):
                    law.fail((s, x, y))

    law = report.new("relative-complement-unique")
    for t in range(n):
        for s in iter_bits(monoid.down_mask(t)):
            law.tick()
            r = monoid.relative_complement(s, t)
            candidates = [x for x in range(n)
                          if monoid.leq(x, t) and monoid.orthogonal(s, x)
                          and monoid.join(s, x) == t]
            if candidates != [r]:
                law.fail((s, t, candidates))

    law = report.new("separation-below")
    for s in range(n):
        if s == monoid.zero:
            continue
        for t in range(n):
            if monoid.leq(s, t):
                continue
            law.tick()
            s_prime = monoid.relative_complement(monoid.meet(s, t), s)
            if (s_prime == monoid.zero or not monoid.leq(s_prime, s)
                    or monoid.meet(s_prime, t) != monoid.zero):
                law.fail((s, t))
    return report


def compatible_join_laws(monoid: InverseMonoid) -> LawReport:
    """Compatible pairs have joins, and the join agrees with the three-way
    orthogonal decomposition through meet and relative complements."""
    monoid.require_boolean()
    report = LawReport("compatible join laws")
    law = report.new("compatible-join-formula")
    n = monoid.n
    for s in range(n):
        for t in range(n):
            if not monoid.compatible(s, t):
                continue
            law.tick()
            j = monoid.join(s, t)
            if j is None:
                law.fail((s, t, "missing"))
                continue
            m = monoid.meet(s, t)
            acc = m
            for part in (monoid.relative_complement(m, s),
                         monoid.relative_complement(m, t)):
                acc = monoid.join(acc, part)
                if acc is None:
                    break
            if acc != j:
                law.fail((s, t, "formula"))
    return report


def filter_laws(monoid: InverseMonoid) -> LawReport:
    """The filter-level laws: base property, ultrafilter criteria agreement,
    coverage, cosets, product minimality, domain submonoids, idempotent
    filters, rigidity, and the prime property of ultrafilters."""
    monoid.require_boolean()
    report = LawReport("filter laws")
    filters = all_filters(monoid)
    ultra = enumerate_ultrafilters(monoid)
    n = monoid.n

    law = report.new("filter-base-pairwise")
    for f in filters:
        for s in f:
            for t in f:
                law.tick()
                if not any(monoid.leq(z, s) and monoid.leq(z, t) for z in f):
                    law.fail((f.generator, s, t))

    law = report.new("ultra-criteria-agree")
    for f in filters:
        law.tick()
        if f.is_ultrafilter() != f.is_ultrafilter_by_maximality():
            law.fail((f.generator,))

    law = report.new("nonzero-in-some-ultrafilter")
    for s in range(n):
        if s == monoid.zero:
            continue
        law.tick()
        if not any(s in f for f in ultra):
            law.fail((s,))

    law = report.new("ultrafilter-intersection-principal")
    for a in range(n):
        if a == monoid.zero:
            continue
        law.tick()
        acc = None
        for f in ultra:
            if a in f:
                acc = f.members if acc is None else acc & f.members
        if acc != monoid.up_mask(a):
            law.fail((a,))

    law = report.new("filters-are-cosets")
    for f in filters:
        law.tick()
        pairs = f.element_product_mask(f.inverse())
        triple = 0
        for ab in iter_bits(pairs):
            for c in f:
                triple |= 1 << monoid.product(ab, c)
        if triple != f.members:
            law.fail((f.generator,))

    law = report.new("product-smallest-filter")
    for a in filters:
        for b in filters:
            law.tick()
            prod_set = a.element_product_mask(b)
            prod = filter_product(a, b)
            if prod_set & prod.members != prod_set:
                law.fail((a.generator, b.generator, "not containing"))
                continue
            for c in filters:
                if (c.members & prod_set == prod_set
                        and c.members & prod.members != prod.members):
                    law.fail((a.generator, b.generator, c.generator))

    law = report.new("domain-inverse-submonoid")
    for f in filters:
        law.tick()
        h = filter_dom(f)
        if monoid.one not in h:
            law.fail((f.generator, "one"))
        for x in h:
            if monoid.inv[x] not in h:
                law.fail((f.generator, x, "inverse"))
            for y in h:
                if monoid.product(x, y) not in h:
                    law.fail((f.generator, x, y))
        for a in f:
            mask = mask_of(monoid.product(a, x) for x in h)
            if monoid.upward_closure(mask) != f.members:
                law.fail((f.generator, a, "coset-form"))

    law = report.new("idempotent-filter-iff-closed")
    for f in filters:
        law.tick()
        closed = (all(monoid.product(x, y) in f for x in f for y in f)
                  and all(monoid.inv[x] in f for x in f))
        if f.is_idempotent_filter != closed:
            law.fail((f.generator,))

    law = report.new("filter-rigidity")
    for a in filters:
        for b in filters:
            law.tick()
            if (a.members & b.members and filter_dom(a) == filter_dom(b)
                    and a != b):
                law.fail((a.generator, b.generator))

    law = report.new("ultrafilters-prime")
    for f in ultra:
        law.tick()
        if not prime_property_check(f):
            law.fail((f.generator,))
    return report


def filter_semigroup_laws(monoid: InverseMonoid) -> LawReport:
    """The filters form an inverse semigroup under the closed product, whose
    idempotents are the idempotent filters and whose natural order is
    reverse inclusion."""
    monoid.require_boolean()
    report = LawReport("filter semigroup laws")
    filters = all_filters(monoid)

    law = report.new("inverse-semigroup")
    for f in filters:
        law.tick()
        candidates = [g for g in filters
                      if filter_product(filter_product(f, g), f) == f
                      and filter_product(filter_product(g, f), g) == g]
        if candidates != [f.inverse()]:
            law.fail((f.generator,))

    law = report.new("idempotents-are-idempotent-filters")
    for f in filters:
        law.tick()
        if (filter_product(f, f) == f) != f.is_idempotent_filter:
            law.fail((f.generator,))

    law = report.new("order-is-reverse-inclusion")
    idem = [e for e in filters if filter_product(e, e) == e]
    for f in filters:
        for g in filters:
            law.tick()
            algebraic = any(filter_product(g, e) == f for e in idem)
            if algebraic != (g.members & f.members == g.members):
                law.fail((f.generator, g.generator))
    return report


def ultra_equivalence_laws(monoid: InverseMonoid) -> LawReport:
    """For every filter, being ultra, having an idempotent-ultrafilter
    domain, and having an idempotent part that is ultra among idempotents
    are equivalent."""
    from .filters import _idempotent_ultra_in_e

    monoid.require_boolean()
    report = LawReport("ultrafilter equivalence laws")
    law = report.new("three-way-equivalence")
    for f in all_filters(monoid):
        law.tick()
        d = filter_dom(f)
        first = f.is_ultrafilter()
        second = d.is_idempotent_filter and d.is_ultrafilter()
        third = _idempotent_ultra_in_e(monoid, d)
        if not (first == second == third):
            law.fail((f.generator,))
    return report


def boolean_monoid_suite(monoid: InverseMonoid) -> LawReport:
    """Everything above plus the basic-open laws, in one report."""
    report = LawReport(f"law suite on {monoid!r}")
    report.extend(order_meet_laws(monoid))
    report.extend(local_complement_laws(monoid))
    report.extend(compatible_join_laws(monoid))
    report.extend(filter_laws(monoid))
    report.extend(filter_semigroup_laws(monoid))
    report.extend(ultra_equivalence_laws(monoid))
    report.extend(verify_basic_open_laws(monoid))
    return report


def clifford_report(monoid: InverseMonoid) -> LawReport:
    report = LawReport("clifford check")
    law = report.new("clifford-groupoid-has-loops-only")
    law.tick()
    result = clifford_check(monoid)
    if not result.is_clifford:
        law.fail(("not-clifford", result.witness))
    elif not (result.loops_only and result.filters_balanced):
        law.fail(("unbalanced",))
    return report


def point_filter_laws(groupoid, *, limits=None) -> LawReport:
    """Laws of the bisections-through-a-point map on a finite groupoid:
    each is ultra, the map intertwines dom and composition, is injective,
    and exhausts the ultrafilters."""
    from .config import DEFAULT_LIMITS
    from .filters import filter_ran
    from .groupoids import all_bisections_monoid, point_ultrafilter

    report = LawReport(f"point filter laws on {groupoid!r}")
    bm = all_bisections_monoid(groupoid, limits=limits or DEFAULT_LIMITS)
    points = [point_ultrafilter(bm, g) for g in range(groupoid.m)]

    law = report.new("point-filters-ultra")
    for g, f in enumerate(points):
        law.tick()
        if not f.is_ultrafilter():
            law.fail((g,))

    law = report.new("point-filters-intertwine")
    for g, f in enumerate(points):
        law.tick()
        if filter_dom(f) != points[groupoid.d[g]] or filter_ran(f) != points[groupoid.r[g]]:
            law.fail((g,))
        for h in range(groupoid.m):
            gh = groupoid.compose_maybe(g, h)
            if gh is not None and filter_product(f, points[h]) != points[gh]:
                law.fail((g, h))

    law = report.new("point-filters-injective")
    law.tick(len(points))
    if len({f.members for f in points}) != len(points):
        law.fail(("collision",))

    law = report.new("point-filters-exhaust-ultrafilters")
    law.tick()
    enumerated = {f.members for f in enumerate_ultrafilters(bm.monoid)}
    if {f.members for f in points} != enumerated:
        law.fail(("mismatch",))
    return report
