"""Verification reports: one record per checked claim."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
CORRECTED = "pass-with-corrections"
STATUSES = (PASS, FAIL, CORRECTED)


@dataclass
class Claim:
    id: str
    status: str
    witness: str = ""
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")


@dataclass
class VerificationReport:
    name: str
    claims: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def status(self):
        states = {c.status for c in self.claims}
        if FAIL in states:
            return FAIL
        if CORRECTED in states:
            return CORRECTED
        return PASS

    @property
    def ok(self):
        return self.status != FAIL

    def add(self, claim_id, ok, witness="", detail="", corrected=False):
        if not ok:
            status = FAIL
        elif corrected:
            status = CORRECTED
        else:
            status = PASS
        c = Claim(claim_id, status, witness, detail)
        self.claims.append(c)
        return c

    def __getitem__(self, claim_id):
        for c in self.claims:
            if c.id == claim_id:
                return c
        raise KeyError(claim_id)

    def sorted_claims(self):
        return sorted(self.claims, key=lambda c: c.id)

    def to_records(self):
        """Tab-separated ``id<TAB>status<TAB>witness`` lines, sorted by id."""
        lines = []
        for c in self.sorted_claims():
            witness = c.witness.replace("\t", " ").replace("\n", " ")
            lines.append(f"{c.id}\t{c.status}\t{witness}")
        return "\n".join(lines)

    def to_text(self):
        lines = [f"== {self.name}: {self.status} ({len(self.claims)} claims)"]
        for c in self.sorted_claims():
            line = f"{c.id} {c.status}"
            if c.detail:
                line += f"  -- {c.detail}"
            lines.append(line)
            if c.witness and c.status != PASS:
                lines.append(f"    witness: {c.witness}")
        return "\n".join(lines)


def merge(name, reports):
    out = VerificationReport(name)
    for r in reports:
        out.claims.extend(r.claims)
        out.elapsed += r.elapsed
    return out


@contextmanager
def timed(report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed = time.perf_counter() - t0
