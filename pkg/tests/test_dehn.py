import warnings

import pytest
from hypothesis import given, settings, strategies as st

from palaut import dehn, freeword as fw
from palaut.dehn import AreaStatus, SearchBudget

from oracles import commutator_power_word, product_of_conjugates, reduce_letters, z2_tiling_certificate

Z2 = dehn.load_presentation("gens: a b\nrel: a b a^-1 b^-1\n")
FREE2 = dehn.load_presentation("gens: a b\n")
Z3 = dehn.load_presentation("gens: t\nrel: t^3\n")
BS12 = dehn.load_presentation("gens: a t\nrel: t a t^-1 a^-2\n")


def word(letters, pres=Z2):
    return fw.reduce(letters, pres.rank)


def as_cert(triples, pres=Z2):
    return [dehn.CertEntry(word(g, pres), idx, s) for g, idx, s in triples]


def exact_budget(w_len, area_bound, longest=4):
    # no useful state is longer than longest * area_bound, so this cap never prunes
    return SearchBudget(max_word_len=max(w_len, longest * area_bound), max_area=area_bound + 1)


# --- presentations and certificates ------------------------------------------------

def test_load_presentation():
    assert Z2.names == ("a", "b") and len(Z2.relators) == 1
    assert dehn.load_presentation("gens: a\n").relators == ()
    assert dehn.load_presentation(dehn.dump_presentation(Z2)) == Z2


def test_presentation_warns_and_cyclically_reduces():
    with pytest.warns(UserWarning):
        pres = dehn.load_presentation("gens: a b\nrel: b a b^-1 a^2 b a^-1 b^-1\n")
    assert pres.format(pres.relators[0]) == "a^2"


@pytest.mark.parametrize("text", ["rel: a\n", "gens: a\nrel: b\n", "gens: a e\n", "gens: a\nrel: a a^-1\n",
                                  "gens: a\nfoo: a\n", "# nothing\n", "gens: a a\n"])
def test_presentation_errors(text):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises((dehn.PresentationError, fw.WordError)):
            dehn.load_presentation(text)


def test_check_certificate_examples():
    r = Z2.relators[0]
    assert dehn.check_certificate(Z2, r, [dehn.CertEntry(fw.Word.identity(2), 0, 1)])
    assert dehn.check_certificate(Z2, fw.Word.identity(2), [])
    assert not dehn.check_certificate(Z2, r, [])
    with pytest.raises(IndexError):
        dehn.check_certificate(Z2, r, [dehn.CertEntry(fw.Word.identity(2), 1, 1)])


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_tiling_certificates(m):
    cert = z2_tiling_certificate(m)
    rel = [[1, 2, -1, -2]]
    assert product_of_conjugates(cert, rel) == commutator_power_word(m)
    assert dehn.check_certificate(Z2, word(commutator_power_word(m)), as_cert(cert))
    assert len(cert) == m * m


def test_certificate_file_round_trip():
    cert = as_cert(z2_tiling_certificate(2))
    text = dehn.dump_certificate(Z2, cert)
    assert dehn.load_certificate(text, Z2) == cert
    with pytest.raises(dehn.PresentationError):
        dehn.load_certificate("1 +1 a\n", Z2)


# --- area ---------------------------------------------------------------------------

@pytest.mark.parametrize("m,expected", [(0, 0), (1, 1), (2, 4), (3, 9)])
def test_area_commutator_powers(m, expected):
    w = word(commutator_power_word(m))
    res = dehn.area(Z2, w, exact_budget(len(w), expected + 1))
    assert res.status is AreaStatus.EXACT
    assert res.area == expected
    assert dehn.check_certificate(Z2, w, res.certificate)


@pytest.mark.parametrize("m,expected", [(1, 1), (2, 4)])
def test_bfs_route_agrees(m, expected):
    w = word(commutator_power_word(m))
    res = dehn.area(Z2, w, exact_budget(len(w), expected), method="bfs")
    assert res.area == expected and res.status is AreaStatus.EXACT
    assert dehn.check_certificate(Z2, w, res.certificate)


def test_area_default_budget_status():
    w = word(commutator_power_word(3))
    res = dehn.area(Z2, w)
    assert res.area == 9
    assert res.status in (AreaStatus.EXACT, AreaStatus.EXACT_WITHIN_LENGTH_BOUND)


def test_area_negative_answers():
    assert dehn.area(Z2, word([1])).status is AreaStatus.NOT_NULL_HOMOTOPIC
    assert dehn.area(FREE2, word([1, 2, -1, -2], FREE2)).status is AreaStatus.NOT_NULL_HOMOTOPIC
    tight = dehn.area(Z2, word(commutator_power_word(3)), SearchBudget(max_area=5))
    assert tight.status is AreaStatus.BUDGET_EXHAUSTED and tight.area is None
    tiny = dehn.area(Z2, word(commutator_power_word(3)), SearchBudget(max_states=3))
    assert tiny.status is AreaStatus.BUDGET_EXHAUSTED


def test_area_non_zero_sum_relator():
    # no abelianization shortcut here; the search itself must decide
    assert dehn.area(Z3, word([1, 1, 1], Z3)).area == 1
    assert dehn.area(Z3, word([1, 1, 1, 1, 1, 1], Z3)).area == 2
    assert dehn.area(Z3, word([-1, -1, -1], Z3)).area == 1
    res = dehn.area(BS12, word([2, 1, -2, -1, -1], BS12))
    assert res.area == 1


def test_budget_validation():
    for bad in (dict(max_word_len=0), dict(max_states=-1), dict(max_area=0), dict(max_area=1.5)):
        with pytest.raises(ValueError):
            SearchBudget(**bad)


def test_is_null_homotopic():
    yes = dehn.is_null_homotopic(Z2, word([1, 2, -1, -2]))
    assert yes.answer is True and yes.result.area == 1
    assert dehn.is_null_homotopic(Z2, word([1])).answer is False
    free = dehn.is_null_homotopic(FREE2, fw.Word.identity(2))
    assert free.answer is True and free.result.area == 0
    unknown = dehn.is_null_homotopic(Z2, word(commutator_power_word(2)), SearchBudget(max_area=2))
    assert unknown.answer is None


def null_homotopic_words(max_len):
    out = []
    for n in range(0, max_len + 1, 2):
        for t in dehn._reduced_words(2, n):
            sa = sum(1 for x in t if x == 1) - sum(1 for x in t if x == -1)
            sb = sum(1 for x in t if x == 2) - sum(1 for x in t if x == -2)
            if sa == 0 and sb == 0:
                out.append(list(t))
    return out


def test_area_invariant_under_inversion_and_rotation():
    # every zero-sum word is null-homotopic in Z^2
    budget = SearchBudget(max_word_len=24)
    for t in null_homotopic_words(6):
        res = dehn.area(Z2, word(t), budget)
        a = res.area
        assert a is not None
        assert (a == 0) == (reduce_letters(t) == [])
        assert dehn.area(Z2, word(t).inverse(), budget).area == a
        for r in range(1, len(t)):
            assert dehn.area(Z2, word(t[r:] + t[:r]), budget).area == a


def test_fill_and_bfs_agree_on_short_words():
    budget = SearchBudget(max_word_len=12)
    for t in null_homotopic_words(6):
        w = word(t)
        f = dehn.area(Z2, w, budget)
        b = dehn.area(Z2, w, budget, method="bfs")
        assert f.area == b.area
        assert dehn.check_certificate(Z2, w, b.certificate)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=5),
       st.lists(st.sampled_from([1, -1, 2, -2]), max_size=5))
def test_subadditivity(xs, ys):
    # u = x y x^-1 y^-1 style words are always null-homotopic in Z^2
    def comm(a, b):
        return a + b + [-x for x in reversed(a)] + [-x for x in reversed(b)]
    u, v = word(comm(xs, ys)), word(comm(ys, xs))
    budget = SearchBudget(max_word_len=40)
    au, av, auv = (dehn.area(Z2, w, budget) for w in (u, v, u * v))
    if all(r.status is AreaStatus.EXACT for r in (au, av, auv)):
        assert auv.area <= au.area + av.area


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=10))
def test_certificates_always_valid(xs):
    w = word(xs)
    res = dehn.area(Z2, w, SearchBudget(max_word_len=24))
    if res.found:
        assert dehn.check_certificate(Z2, w, res.certificate)
        assert len(res.certificate) == res.area


# --- profiles ---------------------------------------------------------------------

def test_profile_z2():
    rows = dehn.dehn_profile(Z2, 6)
    deltas = [d for _, d, _ in rows]
    assert [n for n, _, _ in rows] == list(range(7))
    assert deltas[4] == 1
    assert deltas == sorted(deltas)
    assert deltas == [0, 0, 0, 0, 1, 1, 2]


def test_profile_free_group():
    rows = dehn.dehn_profile(FREE2, 5)
    assert all(d == 0 for _, d, _ in rows)
    assert all(f == "exact" for _, _, f in rows)


def test_profile_threads_identical():
    assert dehn.dehn_profile(Z2, 5, threads=3) == dehn.dehn_profile(Z2, 5)


def test_profile_lower_bound_flag():
    assert dehn.dehn_profile(Z2, 4, SearchBudget(max_area=1))[4] == (4, 1, "exact")
    # length-8 words of area 3 and 4 exceed max_area
    rows = dehn.dehn_profile(Z2, 8, SearchBudget(max_area=2))
    assert "lower-bound" in rows[8][2]


def test_profile_csv():
    text = dehn.profile_to_csv(dehn.dehn_profile(Z2, 2))
    assert text.splitlines()[:3] == ["# palaut-lab v1", "n,delta,flag", "0,0,exact"]


def test_epa_presentation_trivial_words():
    from palaut.fgauto import epa_presentation
    pres = epa_presentation(3)
    for r in pres.relators:
        res = dehn.area(pres, r, SearchBudget(max_area=2))
        assert res.area == 1
