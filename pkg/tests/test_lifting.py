"""Liftability criteria, the lift construction, and the regraded category."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedsupport.constructions import (
    n_homogeneous_dual,
    quiver_algebra,
    regular_module,
    truncated_polynomial,
)
from gradedsupport.errors import PreconditionError
from gradedsupport.exactlin import GF, LabeledSpace, Matrix
from gradedsupport.graded_core import (
    GradedModule,
    kill_support_algebra,
    kill_support_module,
    modules_equal,
    regrade_module,
    shift_module,
    validate_module,
)
from gradedsupport.lifting import (
    certified_isomorphism,
    check_and_lift,
    equivalence_harness,
    in_lifted_category,
    koszul_pipeline,
    lift_module,
    liftability_check,
    liftability_check_interval,
    random_killed_module,
    random_presented_module,
    regraded_interval_conditions,
)
from gradedsupport.regrade_maps import delta_map
from gradedsupport.subsets import DegreeSet

U3 = DegreeSet.periodic(3, (0, 1))


def killed_setup(field=None, top=6):
    kwargs = {"field": field} if field is not None else {}
    a = truncated_polynomial(top + 1, 1, window=(0, top), **kwargs)
    return a, kill_support_algebra(a, U3)


def two_loop_witness():
    """A module that fails the kernel-containment criterion by hand.

    Over A = K<x, y>/(yx) killed to U = {0, 1} + 3Z, take X_0 = X_3 = K
    with x^3 acting as the identity and everything else by zero.  The
    kernel of mu_{0,1} is all of X_0 (x) B_1; pushing e (x) x into A_3
    gives e (x) x^3, which acts as 1 on X_0, so the kernel escapes at
    (m, u, v) = (0, 1, 3).
    """
    a = quiver_algebra(1, [(0, 0), (0, 0)], [[(1, (1, 0))]], 4)
    b = kill_support_algebra(a, U3)
    f = b.field
    one = Matrix.identity(f, 1)
    act = Matrix.from_rows(
        f, [[f.one()], [f.zero()], [f.zero()], [f.zero()]], 1)
    comps = {0: LabeledSpace.untagged(1), 3: LabeledSpace.untagged(1)}
    bad = GradedModule(b, b.window, comps,
                       {(0, 0): one, (3, 0): one, (0, 3): act})
    good = GradedModule(b, b.window, comps, {(0, 0): one, (3, 0): one})
    return a, b, bad, good


# ---------------------------------------------------------------------------
# the two checkers on a hand-verified witness


def test_witness_modules_validate():
    _, _, bad, good = two_loop_witness()
    assert validate_module(bad).holds
    assert validate_module(good).holds


def test_general_checker_finds_the_witness_triple():
    a, _, bad, _ = two_loop_witness()
    report = liftability_check(bad, U3, U3, a)
    assert not report.liftable
    assert [(m, u, v) for m, u, v, _ in report.violations] == [(0, 1, 3)]


def test_interval_checker_finds_the_same_triple():
    a, _, bad, _ = two_loop_witness()
    report = liftability_check_interval(bad, U3, U3, a)
    assert not report.liftable
    assert [(m, u, v) for m, u, v, _ in report.violations] == [(0, 1, 3)]


def test_zero_action_cousin_is_liftable():
    a, _, _, good = two_loop_witness()
    assert liftability_check(good, U3, U3, a).liftable
    assert liftability_check_interval(good, U3, U3, a).liftable


def test_lift_module_refuses_the_witness():
    a, _, bad, _ = two_loop_witness()
    with pytest.raises(PreconditionError):
        lift_module(bad, U3, U3, a)


def test_violation_vector_escapes_for_real():
    # the recorded vector must have nonzero image under mu_{m,v}
    a, _, bad, _ = two_loop_witness()
    report = liftability_check(bad, U3, U3, a)
    _m, _u, _v, vec = report.violations[0]
    assert any(c != bad.field.zero() for c in vec)


# ---------------------------------------------------------------------------
# general and interval checkers agree on random killed modules


@settings(max_examples=40)
@given(seed=st.integers(0, 10 ** 6))
def test_checkers_agree_on_killed_modules(seed):
    a, b = killed_setup()
    x = random_killed_module(b, U3, U3, seed)
    general = liftability_check(x, U3, U3, a)
    interval = liftability_check_interval(x, U3, U3, a)
    assert general.liftable == interval.liftable


@settings(max_examples=25)
@given(seed=st.integers(0, 10 ** 6))
def test_presented_in_quotient_degrees_is_liftable(seed):
    a, b = killed_setup()
    x = random_presented_module(b, U3, U3, seed)
    assert liftability_check(x, U3, U3, a).liftable


def test_shifting_by_the_period_preserves_the_verdict():
    a, b = killed_setup(top=9)
    for seed in range(8):
        x = random_killed_module(b, U3, U3, seed, window=(0, 6))
        before = liftability_check(x, U3, U3, a).liftable
        after = liftability_check(shift_module(x, 3), U3, U3, a).liftable
        assert before == after


def test_interval_checker_needs_an_interval():
    a = truncated_polynomial(6, 1, window=(0, 5))
    u = DegreeSet.periodic(5, (0, 2))
    with pytest.raises(PreconditionError):
        liftability_check_interval(regular_module(kill_support_algebra(a, u)),
                                   u, u, a)


# ---------------------------------------------------------------------------
# the lift construction round trips


def test_killed_regular_module_lifts_back_to_itself():
    a, b = killed_setup()
    m = regular_module(a)
    ms = kill_support_module(m, U3, U3, b)
    report = check_and_lift(ms, U3, U3, a)
    assert report.liftable
    assert report.isomorphism_certified
    assert report.generated_certified
    assert report.cogenerated_certified
    assert report.lift.dims() == m.dims()
    assert certified_isomorphism(
        kill_support_module(report.lift, U3, U3, b), ms) is not None


def test_round_trips_over_a_big_prime_field():
    a, b = killed_setup(field=GF(101))
    for seed in range(10):
        x = random_killed_module(b, U3, U3, seed)
        report = check_and_lift(x, U3, U3, a)
        if not report.liftable:
            continue
        assert report.isomorphism_certified
        back = kill_support_module(report.lift, U3, U3, b)
        assert certified_isomorphism(back, x) is not None


def test_lift_is_supported_in_translated_degrees():
    a, b = killed_setup()
    s = U3.translate(1)
    x = random_presented_module(b, s, U3, 7)
    lifted = lift_module(x, s, U3, a)
    for d in lifted.degrees():
        assert s.try_contains(d) or not lifted.component(d).dim \
            or d not in x.degrees()
    back = kill_support_module(lifted, s, U3, b)
    assert certified_isomorphism(back, x) is not None


# ---------------------------------------------------------------------------
# isomorphism certificates


def test_certificate_on_identical_modules():
    _, b = killed_setup()
    m = regular_module(b)
    assert certified_isomorphism(m, m) is not None


def test_certificate_on_the_zero_module():
    _, b = killed_setup()
    z = GradedModule(b, b.window, {}, {})
    assert certified_isomorphism(z, z) == {}


def test_no_certificate_across_different_dimensions():
    _, _, bad, _ = two_loop_witness()
    b = bad.over
    one = Matrix.identity(b.field, 1)
    small = GradedModule(b, b.window, {0: LabeledSpace.untagged(1)},
                         {(0, 0): one})
    assert certified_isomorphism(bad, small) is None


def test_no_certificate_between_twisted_and_untwisted():
    # same dims, but any homomorphism must kill the top component
    _, _, bad, good = two_loop_witness()
    assert certified_isomorphism(bad, good) is None


# ---------------------------------------------------------------------------
# the hom-dimension harness


def test_harness_holds_and_reports_every_sample():
    a, _ = killed_setup()
    report = equivalence_harness(a, U3, U3, samples=6, seed=11)
    assert report.holds
    assert len(report.samples) == 6
    assert [r.index for r in report.samples] == list(range(6))
    for r in report.samples:
        assert r.hom_dim_ambient == r.hom_dim_killed


def test_harness_is_reproducible():
    a, _ = killed_setup()
    first = equivalence_harness(a, U3, U3, samples=4, seed=3)
    second = equivalence_harness(a, U3, U3, samples=4, seed=3)
    assert [(r.hom_dim_ambient, r.hom_dim_killed) for r in first.samples] \
        == [(r.hom_dim_ambient, r.hom_dim_killed) for r in second.samples]


# ---------------------------------------------------------------------------
# the regraded category matches the interval criterion


def test_membership_conditions_match_the_interval_checker():
    a, b = killed_setup(field=GF(101))
    phi = delta_map(U3, 0, (0, 4))
    for seed in range(14):
        x = random_killed_module(b, U3, U3, seed)
        want = liftability_check_interval(x, U3, U3, a).liftable
        got = in_lifted_category(regrade_module(x, phi), a, 3, 1)
        assert want == got


def test_witness_module_fails_the_regraded_conditions():
    a, _, bad, good = two_loop_witness()
    phi = delta_map(U3, 0, (0, 3))
    conditions = regraded_interval_conditions(regrade_module(bad, phi), a, 3)
    assert any(not holds for _s, holds, _w in conditions)
    sigma, holds, witness = [c for c in conditions if not c[1]][0]
    assert sigma == 0 and witness is not None
    assert in_lifted_category(regrade_module(good, phi), a, 3, 1)


def test_conditions_reject_bad_parameters():
    a, b = killed_setup()
    v = regrade_module(regular_module(b), delta_map(U3, 0, (0, 4)))
    with pytest.raises(PreconditionError):
        regraded_interval_conditions(v, a, 3, r=2)


# ---------------------------------------------------------------------------
# the end-to-end pipeline


def test_pipeline_on_the_dual_of_the_cube_zero_algebra():
    # the degreewise dual of K[x]/(x^3) has a one-dimensional component
    # in every degree up to the window top
    a = n_homogeneous_dual(1, [[(1, (0, 0, 0))]], 6)
    regraded, even, report = koszul_pipeline(a, 3)
    assert report.holds
    assert report.regraded_window == (0, 4)
    assert report.regraded_dims == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}
    assert report.even_preimage_members == (0, 2, 4)
    assert even.try_contains(2) and not even.try_contains(1)
    assert all(ok for _s, _t, ok in report.vanishing_pairs)
    assert all(ok for _s, ok, _w in report.conditions)


def test_pipeline_window_must_reach_twice_the_period():
    with pytest.raises(PreconditionError):
        koszul_pipeline(truncated_polynomial(3, 1), 3)


def test_pipeline_with_a_translate():
    a = n_homogeneous_dual(1, [[(1, (0, 0, 0))]], 6)
    _, _, report = koszul_pipeline(a, 3, m=3)
    assert report.translate == 3
    assert report.holds
