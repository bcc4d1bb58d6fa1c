"""Command line reports over the fixture corpus.

Expectations for the twisted double family come from the closed form of
its Seifert matrix [[-1,1],[0,m]], m = a(a+1): Alexander polynomial
m t^2 - (2m+1) t + m and double cover order 4m+1 = (2a+1)^2.  Torus knot
values repeat numbers already pinned in the module test files; the su2
comparison is a genuine dual route (arc counting vs matrix signature).
"""

import json
import os
import subprocess
import sys

import pytest

from knotconcord.cli import main

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name):
    return os.path.join(FIXTURES, name)


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


# ---------------------------------------------------------------------------
# alexander / signature / cover over the corpus


ALEXANDER_EXPECTED = [
    ("twisted_double_a1.json", "2t^2-5t+2"),
    ("twisted_double_a2.json", "6t^2-13t+6"),
    ("twisted_double_a3.json", "12t^2-25t+12"),
    ("twisted_double_a4.json", "20t^2-41t+20"),
    ("twisted_double_a5.json", "30t^2-61t+30"),
    ("twisted_double_a6.json", "42t^2-85t+42"),
    ("fig8.json", "t^2-3t+1"),
    ("torus_2_3.json", "t^2-t+1"),
    ("torus_2_5.json", "t^4-t^3+t^2-t+1"),
    ("torus_2_7.json", "t^6-t^5+t^4-t^3+t^2-t+1"),
    ("order_two_t1.json", "t^2-3t+1"),
    ("order_two_t4.json", "t^2-3t+1"),
]


@pytest.mark.parametrize("name,expected", ALEXANDER_EXPECTED)
def test_alexander_corpus(capsys, name, expected):
    report = run_json(capsys, ["alexander", "--knot", fx(name)])
    assert report["result"]["rendered"] == expected


SIGNATURE_EXPECTED = [
    ("torus_2_7.json", "1/5", -2),
    ("torus_2_7.json", "2/5", -6),
    ("torus_2_7.json", "1/2", -6),
    ("fig8.json", "1/3", 0),
    ("fig8.json", "1/2", 0),
    ("torus_neg_5_6.json", "1/2", 16),
    ("torus_neg_2_3.json", "1/2", 2),
]


@pytest.mark.parametrize("name,t,expected", SIGNATURE_EXPECTED)
def test_signature_corpus(capsys, name, t, expected):
    report = run_json(capsys, ["signature", "--knot", fx(name), "--t", t])
    assert report["result"]["signature"] == expected


COVER_EXPECTED = (
    [(f"twisted_double_a{a}.json", (2 * a + 1) ** 2) for a in range(1, 7)]
    + [(f"torus_2_{q}.json", q) for q in (3, 5, 7, 9, 11)]
    + [(f"order_two_t{i}.json", 5) for i in range(1, 5)]
    + [("sum_double_a2_n2.json", 625), ("sum_double_a2_n3.json", 15625)]
)


@pytest.mark.parametrize("name,order", COVER_EXPECTED)
def test_cover_corpus(capsys, name, order):
    report = run_json(capsys, ["cover", "--knot", fx(name), "--d", "2"])
    assert report["result"]["order"] == order


def test_su2_agrees_with_matrix_signature(capsys):
    # arc counting and the exact matrix signature are independent routes
    for a in (2, 3, 4):
        for t in ("1/3", "2/5"):
            arcs = run_json(capsys, ["su2", "--a", str(a), "--t", t])
            mat = run_json(capsys, ["signature", "--knot",
                                    fx(f"torus_neg_{a}_{a + 1}.json"),
                                    "--t", t])
            assert arcs["result"]["count"] == mat["result"]["signature"]


# ---------------------------------------------------------------------------
# linking / metabolizers


def test_linking_report(capsys):
    report = run_json(capsys, ["linking", "--knot",
                               fx("twisted_double_a1.json"), "--d", "2"])
    assert report["result"]["group"] == [9]


def test_metabolizers_unique_for_z25(capsys):
    report = run_json(capsys, ["metabolizers", "--knot",
                               fx("twisted_double_a2.json"), "--d", "2"])
    assert report["result"]["count"] == 1
    assert report["result"]["metabolizers"][0]["order"] == 5


def test_metabolizers_invariant_only_pair_form(capsys):
    report = run_json(capsys, ["metabolizers", "--knot",
                               fx("sum_double_a2_n2.json"), "--d", "2",
                               "--invariant-only"])
    assert report["result"]["count"] == 3
    assert all(m["order"] == 25 for m in report["result"]["metabolizers"])


# ---------------------------------------------------------------------------
# satellite primitives


def test_cg_sigma_values(capsys):
    report = run_json(capsys, ["cg-sigma", "--knot", fx("torus_2_7.json"),
                               "--a", "1", "--p", "5"])
    assert report["result"]["growth"]["coefficient"] == -2
    assert report["result"]["zero"] is False
    report = run_json(capsys, ["cg-sigma", "--knot", fx("torus_2_7.json"),
                               "--a", "0", "--p", "5"])
    assert report["result"]["zero"] is True


def test_cg_delta_factors(capsys):
    report = run_json(capsys, ["cg-delta", "--knot",
                               fx("twisted_double_a1.json"),
                               "--lifts", "1,2,4", "--p", "7"])
    factors = report["result"]["factors"]
    assert [f["shift"] for f in factors] == [1, 2, 4]
    assert all(f["poly"] == [2, -5, 2] for f in factors)
    assert all(f["multiplicity"] == 1 for f in factors)


# ---------------------------------------------------------------------------
# obstruction drivers


def test_obstruct_twisted_double_a2(capsys):
    report = run_json(capsys, ["obstruct-twisted-double", "--a", "2"])
    r = report["result"]
    assert r["claim"] == "not cg-slice"
    assert r["obstructed"] is True
    assert r["all_signatures_positive"] is True
    assert [c["min_coefficient"] for c in r["cases"]] == [2]


def test_obstruct_twisted_double_a1_no_claim(capsys):
    report = run_json(capsys, ["obstruct-twisted-double", "--a", "1"])
    assert report["result"]["claim"] is None
    assert report["result"]["obstructed"] is False


def test_obstruct_order2(capsys):
    report = run_json(capsys, ["obstruct-order2", "--i", "1", "--j", "2"])
    assert report["result"]["coefficient"] == -4
    assert report["result"]["obstructed"] is True
    report = run_json(capsys, ["obstruct-order2", "--i", "2", "--j", "2"])
    assert report["result"]["obstructed"] is False
    assert report["result"]["claim"] is None


@pytest.mark.parametrize("name", ["mutant_single.json",
                                  "mutant_equal_pair.json",
                                  "mutant_mixed_pair.json"])
def test_obstruct_mutant_sum(capsys, name):
    report = run_json(capsys, ["obstruct-mutant-sum", "--knot", fx(name)])
    assert report["result"]["obstructed"] is True
    assert report["result"]["all_not_norm"] is True


def test_obstruct_mutant_sum_mode_override(capsys):
    report = run_json(capsys, ["obstruct-mutant-sum", "--knot",
                               fx("mutant_single.json"),
                               "--mode", "abstract"])
    assert report["result"]["mode"] == "abstract"
    assert report["result"]["obstructed"] is True


# ---------------------------------------------------------------------------
# su2 and labelings


def test_su2_herald_report(capsys):
    report = run_json(capsys, ["su2", "--a", "3", "--grid", "60"])
    r = report["result"]
    assert r["all_positive"] is True
    assert r["covers_window"] is True
    assert r["samples_checked"] + r["skipped_endpoints"] == 60


def test_labelings_dihedral_counts(capsys):
    report = run_json(capsys, ["labelings", "--pd", fx("trefoil.pd"),
                               "--p", "3", "--classify"])
    assert report["result"]["labelings"]["size"] == 9
    assert report["result"]["labelings"]["classes_mod_translation"] == 3
    assert report["result"]["characters"]["order"] == 3
    report = run_json(capsys, ["labelings", "--pd", fx("fig8.pd"),
                               "--p", "5"])
    assert report["result"]["labelings"]["size"] == 25


def test_labelings_metacyclic(capsys):
    report = run_json(capsys, ["labelings", "--pd", fx("trefoil.pd"),
                               "--d", "3", "--n", "49", "--q", "30",
                               "--classify"])
    assert report["result"]["labelings"]["size"] == 49
    assert report["result"]["characters"]["order"] == 1


# ---------------------------------------------------------------------------
# report mechanics: determinism, rendering, exit codes


def test_reports_are_byte_identical(capsys):
    for argv in [["obstruct-twisted-double", "--a", "2", "--json"],
                 ["labelings", "--pd", fx("trefoil.pd"), "--p", "3",
                  "--classify", "--json"],
                 ["metabolizers", "--knot", fx("twisted_double_a2.json"),
                  "--d", "2", "--json"]]:
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second
        json.loads(first)


def test_subprocess_runs_are_byte_identical():
    cmd = [sys.executable, "-m", "knotconcord.cli",
           "obstruct-twisted-double", "--a", "2", "--json"]
    runs = [subprocess.run(cmd, capture_output=True, text=True)
            for _ in range(2)]
    assert all(r.returncode == 0 for r in runs)
    assert runs[0].stdout == runs[1].stdout
    assert "elapsed seconds" in runs[0].stderr


def test_human_rendering(capsys):
    code = main(["signature", "--knot", fx("torus_2_7.json"), "--t", "2/5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "signature: -6" in out


def test_exit_code_precondition(capsys):
    # t = 1/6 is an Alexander root of the trefoil
    code = main(["signature", "--knot", fx("torus_2_3.json"), "--t", "1/6"])
    assert code == 2
    code = main(["alexander", "--knot", fx("does_not_exist.json")])
    assert code == 2
    code = main(["labelings", "--pd", fx("trefoil.pd"), "--n", "15",
                 "--q", "2", "--d", "4", "--classify"])
    assert code == 2


def test_exit_code_budget(capsys):
    code = main(["metabolizers", "--knot", fx("sum_double_a2_n2.json"),
                 "--d", "2", "--budget", "2"])
    assert code == 3


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("KNOTCONCORD_BUDGET", "2")
    code = main(["metabolizers", "--knot", fx("sum_double_a2_n2.json"),
                 "--d", "2"])
    assert code == 3
    monkeypatch.setenv("KNOTCONCORD_BUDGET", "not a number")
    code = main(["metabolizers", "--knot", fx("sum_double_a2_n2.json"),
                 "--d", "2"])
    assert code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
