"""Verify-layer plumbing: registry shape, negative control, idempotence."""

from fcensus import formulas, verify


def test_registry_covers_every_criterion():
    ids = [cid for cid, _ in verify.CHECKS]
    assert len(ids) == 12
    assert len(set(ids)) == 12
    assert all(cid.startswith("crit-") for cid in ids)


def test_negative_control_tampered_table(monkeypatch):
    # corrupting the closed-form table must flip the subalgebra check red
    real = formulas.c_inf

    def tampered(p, n):
        return real(p, n) + 1 if (p, n) == (2, 3) else real(p, n)

    monkeypatch.setattr(formulas, "c_inf", tampered)
    outcome = verify.check_commutative_subalgebras(fast=True)
    assert outcome.status == "fail"


def test_checks_idempotent():
    a = verify.check_diag_subalgebra_count(True)
    b = verify.check_diag_subalgebra_count(True)
    assert a.status == b.status == "pass"
    assert a.observed == b.observed
