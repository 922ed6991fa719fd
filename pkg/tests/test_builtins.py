"""Code-embedded example populations and their reference reproductions."""

from fractions import Fraction

import pytest

from bigs import (builtin_population, reproduce, reproduce_table4,
                  reproduce_thompson1990, table4_bigs, thompson1990)


def test_five_grid_population_contents():
    pop = thompson1990()
    assert pop.design.kind == "srswor" and pop.design.n == 2
    assert pop.design.frame == ("1", "0", "2", "10", "1000")
    assert pop.threshold == 5
    assert pop.y["1000"] == 1000
    assert set(pop.bigs) == {"acs-b", "acs-b-star", "acs-b-dagger"}
    assert pop.graph.n_edges == 4
    assert pop.graph.has_edge("10", "1000")


def test_forty_unit_population_contents():
    pop = table4_bigs()
    assert len(pop.design.frame) == 40
    assert pop.design.n == 2
    t2, t4 = pop.bigs["t2"], pop.bigs["t4"]
    assert [len(t2.ancestors(k)) for k in t2.motifs.keys()] == [4, 4, 4]
    assert [len(t4.ancestors(k)) for k in t4.motifs.keys()] == [15, 16, 14, 12]
    assert all(t2.motifs.y(k) == 1 for k in t2.motifs.keys())
    # Member clusters are contained in their own ancestor sets.
    for big in (t2, t4):
        for m in big.motifs:
            assert m.members <= big.ancestors(m.key)
    # The published successor counts cover every 2-stage ancestor unit.
    alpha = pop.alpha_sizes["t2"]
    for k in t2.motifs.keys():
        assert t2.ancestors(k) <= set(alpha)


def test_builtin_population_dispatch():
    assert builtin_population("thompson1990").name == "thompson1990"
    assert builtin_population("table4-bigs").name == "table4-bigs"
    with pytest.raises(ValueError, match="unknown builtin"):
        builtin_population("nope")
    with pytest.raises(ValueError, match="unknown builtin"):
        reproduce("nope")


def test_five_grid_reproduction_structure():
    rep = reproduce_thompson1990()
    assert len(rep.samples) == 10
    assert rep.samples[0] == ("1", "0")
    assert [c.label for c in rep.columns] == [
        "acs-b:modified-ht", "acs-b-star:ht", "acs-b-dagger:ht",
        "acs-b:rb:modified-ht"]
    for col in rep.columns:
        assert len(col.estimates) == 10
        assert col.expectation == Fraction(1013, 5)  # the population mean
    with pytest.raises(KeyError):
        rep.column("nope")

    # First sample selects the two isolated grids: every strategy reports
    # the plain mean of their inclusion-weighted y-values, 0.5 per grid.
    for label in ("acs-b:modified-ht", "acs-b-star:ht", "acs-b-dagger:ht"):
        assert rep.column(label).estimates[0] == Fraction(1, 2)
    assert rep.observed[0] == ("1", "0")
    assert rep.observed[9] == ("2", "10", "1000")


def test_five_grid_reproduction_key_values():
    rep = reproduce_thompson1990()
    modified = rep.column("acs-b:modified-ht")
    restricted = rep.column("acs-b-star:ht")
    assert modified.estimates == restricted.estimates
    assert modified.variance == restricted.variance

    rb = rep.column("acs-b:rb:modified-ht")
    assert rb.variance <= modified.variance
    # Sample {2, 10} realizes the network motif set; averaging over the
    # three initial samples with that view shifts the estimate.
    idx = rep.samples.index(("2", "10"))
    assert rb.estimates[idx] != modified.estimates[idx]
    assert float(rb.estimates[idx]) == pytest.approx(289.238, abs=5e-4)


def test_forty_unit_reproduction_values():
    rep = reproduce_table4()
    assert rep.seeds == ("3", "12")
    assert rep.value("t2", "ht") == Fraction(78, 5)
    assert rep.value("t2", "hh:equal-share") == 15
    assert rep.value("t2", "hh:inverse-alpha") == Fraction(95, 7)
    assert rep.value("t4", "ht") == Fraction(76847, 11256)
    assert rep.value("t4", "hh:equal-share") == Fraction(159, 28)


def test_reproduce_dispatch():
    rep1 = reproduce("thompson1990")
    assert rep1.column("acs-b:modified-ht")
    rep4 = reproduce("table4-bigs")
    assert rep4.value("t2", "ht") == Fraction(78, 5)
