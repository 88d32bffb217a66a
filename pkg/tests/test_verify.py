import pytest

from betweenness.families import induced_structure, parse_spec
from betweenness.verify import REGISTRY, ClaimReport, VerifyConfig, _Check, verify, verify_all


@pytest.mark.parametrize("claim_id", [cid for cid, c in REGISTRY.items() if c.min_n <= 6])
def test_claims_pass_up_to_n6(claim_id):
    rep = verify(claim_id, max_n=6)
    assert rep.ok, rep.details
    assert rep.runtime >= 0


def test_plin_counts():
    rep = verify("plin", max_n=7)
    assert rep.ok
    assert rep.params["class_counts"] == [1, 2, 1, 1, 1]


def test_unknown_claim():
    with pytest.raises(KeyError):
        verify("nope")


def test_config_selects_claims():
    small = VerifyConfig(max_n=5).claim_ids()
    assert "cmetr7" not in small and "plin" in small
    assert set(VerifyConfig().claim_ids()) == set(REGISTRY)
    reps = verify_all(VerifyConfig(max_n=4))
    assert reps and all(isinstance(r, ClaimReport) and r.ok for r in reps)


def test_failure_records_witness(tmp_path):
    chk = _Check("demo", n=4)
    b = induced_structure(parse_spec("C4"))
    assert chk.expect(True, "fine")
    assert not chk.expect(False, "broken", b)
    rep = chk.report
    assert rep.verdict == "FAIL" and not rep.ok
    paths = rep.write_witnesses(tmp_path)
    assert len(paths) == 1 and paths[0].read_text().startswith("n 4")
