"""Tests for sw, dt, rsw and cform of characters of F_p(x)((t))."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from base_algebra import RESIDUE_VARIABLES, RadicialElem, radicial_root
from conductors import (
    Character,
    ConductorReport,
    analyze,
    cform,
    check_compatibility,
    log_graded_form,
    nonlog_graded_form,
    perfect_residue_swan,
    rsw,
    swan_conductor,
    total_dimension,
)
from conftest import witt_vectors
from errors import ExactnessViolation, PreconditionError, UnsupportedError
from expression_parser import parse_expression
from local_field import uniformizer
from witt import WittVec, in_fil, in_fil_prime


def character(p, *texts):
    return Character.from_components(p, [parse_expression(text, p) for text in texts])


def residue(text, p):
    return parse_expression(text, p, RESIDUE_VARIABLES)


@pytest.mark.parametrize(
    "p, texts, sw, dt",
    [
        (2, ("x/t^2",), 2, 2),
        (2, ("1/t^2",), 1, 2),
        (2, ("x^2/t^2",), 1, 2),
        (2, ("x^2/t^2 + x/t",), 0, 1),
        (2, ("1/t^4",), 1, 2),
        (2, ("x/t", "1/t^3"), 3, 4),
        (2, ("1/t", "0"), 2, 3),
        (3, ("x/t^3",), 3, 3),
        (3, ("1/t",), 1, 2),
        (3, ("x/t^2",), 2, 3),
        (3, ("1/t^3",), 1, 2),
        (3, ("t + x",), 0, 1),
        (5, ("1/t^7",), 7, 8),
    ],
)
def test_conductors(p, texts, sw, dt):
    chi = character(p, *texts)
    n, swan_rep = swan_conductor(chi)
    m, dt_rep = total_dimension(chi)
    assert (n, m) == (sw, dt)
    assert in_fil(swan_rep, n)
    assert in_fil_prime(dt_rep, m)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 4, 5, 7])
def test_pure_pole_sanity(p, n):
    if n % p == 0:
        pytest.skip("p divides n")
    chi = Character.from_components(p, [uniformizer(p) ** -n])
    assert swan_conductor(chi)[0] == n
    assert total_dimension(chi)[0] == n + 1


class TestRefinedForms:
    def test_exceptional_square(self):
        chi = character(2, "x/t^2")
        log_form = rsw(chi)
        assert (log_form.alpha, log_form.beta) == (0, residue("1", 2))
        form = cform(chi)
        assert form.level == 2
        assert form.c_pi == radicial_root(residue("x", 2))
        assert form.radicial
        assert form.c_x == 1

    def test_exceptional_square_that_descends(self):
        form = cform(character(2, "x^2/t^2"))
        assert not form.radicial
        assert form.c_pi.descend() == residue("x", 2)
        assert not form.c_x

    def test_non_logarithmic_jump(self):
        chi = character(3, "1/t")
        assert rsw(chi).alpha == 1
        assert not rsw(chi).beta
        form = cform(chi)
        assert (form.level, form.c_pi, form.c_x) == (2, RadicialElem.embed(residue("1", 3)), 0)

    def test_dx_part_at_p_power_level(self):
        chi = character(3, "x/t^3")
        log_form = rsw(chi)
        assert (log_form.alpha, log_form.beta) == (0, 2)
        form = cform(chi)
        assert not form.c_pi
        assert form.c_x == 2

    def test_trivial_character_has_no_forms(self):
        chi = character(2, "x^2/t^2 + x/t")
        assert rsw(chi) is None
        assert cform(chi) is None

    def test_graded_form_preconditions(self):
        a = character(2, "x/t^2").representative
        with pytest.raises(PreconditionError):
            log_graded_form(a, 0)
        with pytest.raises(PreconditionError):
            log_graded_form(a, 1)
        with pytest.raises(PreconditionError):
            nonlog_graded_form(a, 1)


class TestAnalyze:
    def test_report(self):
        report = analyze(character(2, "x/t", "1/t^3"))
        assert (report.sw, report.dt) == (3, 4)
        assert report.rsw.alpha == 1
        assert report.cform.c_pi == 1
        assert not report.cform.c_x

    def test_inconsistent_report_is_rejected(self):
        good = analyze(character(3, "1/t"))
        bad = ConductorReport(
            sw=1,
            dt=3,
            rsw=good.rsw,
            cform=good.cform,
            swan_representative=good.swan_representative,
            dt_representative=good.dt_representative,
        )
        with pytest.raises(ExactnessViolation):
            check_compatibility(bad)

    @given(st.data())
    def test_twist_invariance(self, data):
        p = data.draw(st.sampled_from((2, 3)))
        chi = character(p, "x/t^3 + 1/t")
        b = data.draw(witt_vectors(p, 1, depth=2))
        base = analyze(chi)
        twisted = analyze(chi.twist(b))
        assert (twisted.sw, twisted.dt) == (base.sw, base.dt)
        assert twisted.rsw == base.rsw
        assert twisted.cform == base.cform

    @given(st.data())
    def test_conductor_laws(self, data):
        p = data.draw(st.sampled_from((2, 3)))
        s = data.draw(st.integers(1, 2))
        report = analyze(Character(data.draw(witt_vectors(p, s, depth=p + 1))))
        assert report.dt in (report.sw, report.sw + 1)
        assert (report.dt == 1) == (report.sw == 0)


class TestPerfectResidue:
    @pytest.mark.parametrize(
        "p, text, expected",
        [(2, "1/t^4", 1), (2, "1/t^6 + 1/t", 3), (2, "1/t^4 + 1/t^2", 0), (3, "2/t^9 + 1/t^2", 2)],
    )
    def test_matches_reduction(self, p, text, expected):
        chi = character(p, text)
        assert perfect_residue_swan(chi) == expected
        assert swan_conductor(chi)[0] == expected

    def test_rejects_residue_variable(self):
        with pytest.raises(PreconditionError):
            perfect_residue_swan(character(2, "x/t"))
        with pytest.raises(PreconditionError):
            perfect_residue_swan(character(2, "1/t", "0"))


class TestCharacter:
    def test_components_must_be_local(self):
        g = parse_expression("x1", 2, ("x1", "x2"))
        with pytest.raises(PreconditionError):
            Character.from_components(2, [g])

    def test_length_cap(self):
        with pytest.raises(UnsupportedError):
            character(5, "1/t", "0", "0")

    def test_twist_changes_representative_only(self):
        chi = character(2, "x/t^2")
        b = WittVec(2, (parse_expression("1/t", 2),))
        twisted = chi.twist(b)
        assert twisted.representative != chi.representative
        assert swan_conductor(twisted)[0] == 2
