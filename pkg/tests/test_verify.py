import json
import random

import pytest

from evenlat.exactlinalg import IntMat
from evenlat.reconstruct import q_gram_of
from evenlat.verify import (
    RESULT_IDS,
    run_all,
    verify_km_embedding,
    verify_lemma_3_1,
    verify_lemma_4_1,
    verify_lemma_4_2,
    verify_prop_4_4,
    verify_prop_4_6,
    verify_prop_6_2,
    verify_section_6,
    verify_thm_4_3,
    verify_thm_4_5_mobius,
)


@pytest.fixture(scope="module")
def report():
    return run_all()


class TestFullRun:
    def test_all_passed(self, report):
        assert report.all_passed

    def test_entry_ids_and_order(self, report):
        assert tuple(e.result_id for e in report.entries) == RESULT_IDS

    def test_report_only_entries(self, report):
        report_only = {e.result_id for e in report.entries if e.status == "report-only"}
        assert report_only == {"thm_4_5_fibration", "prop_6_2_ii", "prop_6_2_iii"}

    def test_reconstruction_entry_records_tier(self, report):
        entry = report.entry("reconstruction_24")
        assert entry.witnesses["tier"] == 3
        assert entry.witnesses["census"] == {"tier1": 111456, "tier2": 2, "tier3": 1}

    def test_json_round_trip(self, report):
        data = report.to_dict()
        assert data["all_passed"] is True
        text = json.dumps(data)
        assert json.loads(text) == data

    def test_markdown_contains_entries(self, report):
        md = report.to_markdown()
        for rid in RESULT_IDS:
            assert f"## {rid}:" in md

    def test_deterministic(self, report):
        assert run_all().to_dict() == report.to_dict()

    def test_ambiguous_tier_policies_fail_honestly(self):
        for policy in ("1", "2"):
            rep = run_all(policy)
            entry = rep.entry("reconstruction_24")
            assert entry.status == "fail"
            assert any("label-inequivalent" in n for n in entry.notes)
            assert not rep.all_passed


class TestIndividualCheckers:
    def test_lemma_3_1(self, gram24):
        entry = verify_lemma_3_1(gram24)
        assert entry.status == "pass"
        assert entry.witnesses["S_det"] == -1

    def test_lemma_4_1(self, gram24):
        entry = verify_lemma_4_1(q_gram_of(gram24))
        assert entry.status == "pass"
        assert entry.witnesses["order"] == 64

    def test_lemma_4_2(self, gram24):
        entry = verify_lemma_4_2(q_gram_of(gram24))
        assert entry.status == "pass"
        assert entry.witnesses["isotropic_count"] == 7

    def test_thm_4_3(self, gram24):
        entry = verify_thm_4_3(gram24)
        assert entry.status == "pass"
        assert entry.witnesses["certified_classes"] == 7
        assert entry.witnesses["nontrivial_subgroups_excluded"] == 10
        assert all(entry.witnesses["splitting"].values())

    def test_prop_4_4(self, gram24):
        entry = verify_prop_4_4(q_gram_of(gram24))
        assert entry.status == "pass"
        assert entry.witnesses["uniqueness_predicate"] is True

    def test_mobius(self):
        assert verify_thm_4_5_mobius().status == "pass"

    def test_km_embedding(self):
        entry = verify_km_embedding()
        assert entry.status == "pass"
        assert entry.witnesses["snf_invariant_factors"] == (1, 1)

    def test_prop_4_6(self):
        entry = verify_prop_4_6()
        assert entry.status == "pass"
        assert entry.witnesses["square"] == 2
        assert entry.witnesses["norm_gcd_omega_perp"] == 4
        assert entry.witnesses["scale_gcd_perp"] == 2

    def test_section_6(self, gram24):
        entry = verify_section_6(gram24)
        assert entry.status == "pass"
        assert entry.witnesses["isotropic_count"] == 31
        assert entry.witnesses["printed_equals_isotropic_set"] is True
        assert entry.witnesses["t_xprime_uniqueness_predicate"] is False
        assert any("classification" in note for note in entry.notes)

    def test_prop_6_2(self):
        entry = verify_prop_6_2()
        assert entry.status == "pass"
        assert entry.witnesses["gram"].entries == ((-4, 0), (0, -4))


class TestFaultInjection:
    def test_perturbed_q_entry_fails_with_coordinates(self, gram24):
        g = [list(row) for row in gram24.entries]
        # R16.R12 feeds exactly the rank-6 block entry (1, 5)
        g[15][11] += 1
        g[11][15] += 1
        report = run_all(gram24=IntMat.from_rows(g))
        entry = report.entry("lemma_3_1")
        assert entry.status == "fail"
        mismatch = entry.witnesses["Q_gram_mismatch"]
        assert (mismatch["row"], mismatch["col"]) == (1, 5)
        assert not report.all_passed

    def test_dependents_blocked_after_failure(self, gram24):
        g = [list(row) for row in gram24.entries]
        g[15][11] += 1
        g[11][15] += 1
        report = run_all(gram24=IntMat.from_rows(g))
        for rid in ("lemma_4_1", "lemma_4_2", "thm_4_3", "prop_4_4"):
            entry = report.entry(rid)
            assert entry.status == "fail"
            assert any("prerequisite" in note for note in entry.notes)

    def test_random_single_entry_faults_are_detected(self, gram24):
        rng = random.Random(1618)
        for _ in range(8):
            i = rng.randrange(24)
            j = rng.randrange(24)
            delta = rng.choice((1, -1, 2))
            g = [list(row) for row in gram24.entries]
            g[i][j] += delta
            g[j][i] = g[i][j] if i != j else g[i][j]
            report = run_all(gram24=IntMat.from_rows(g))
            assert not report.all_passed, (i, j, delta)

    def test_failures_never_crash(self, gram24):
        g = [list(row) for row in gram24.entries]
        for i in range(24):
            g[i][i] = 0  # degenerate input must yield fail entries, not raise
        report = run_all(gram24=IntMat.from_rows(g))
        assert not report.all_passed
