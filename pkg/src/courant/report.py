"""Validation reports shared by all checkers and the command line tool.

A report is an ordered list of named check records.  Failing records
carry a witness: the violated identity, the index tuple where it
failed, and the residual polynomial in canonical text form.  Reports
are fully deterministic (fixed record order, no timestamps), so two
runs on the same input produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence


@dataclass(frozen=True)
class Witness:
    identity: str
    indices: tuple
    residual: str

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "indices": list(self.indices),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class CheckRecord:
    name: str
    status: str  # "pass" | "fail"
    witness: Optional[Witness] = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"


@dataclass
class Report:
    records: List[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def add_pass(self, name: str, witness: Optional[Witness] = None) -> None:
        self.records.append(CheckRecord(name, "pass", witness))

    def add_fail(self, name: str, witness: Optional[Witness] = None) -> None:
        self.records.append(CheckRecord(name, "fail", witness))

    def extend(self, other: "Report") -> None:
        self.records.extend(other.records)

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, name: str) -> CheckRecord:
        for record in self.records:
            if record.name == name:
                return record
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return all(record.ok for record in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def failures(self) -> List[CheckRecord]:
        return [record for record in self.records if not record.ok]

    # -- rendering -------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for record in self.records:
            head = "PASS" if record.ok else "FAIL"
            if record.witness is None:
                lines.append("%s %s" % (head, record.name))
            else:
                w = record.witness
                idx = ",".join(str(i) for i in w.indices)
                lines.append(
                    "%s %s %s@(%s) = %s" % (head, record.name, w.identity, idx, w.residual)
                )
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> str:
        payload = {
            "version": 1,
            "checks": [
                {
                    "name": record.name,
                    "status": record.status,
                    "witness": record.witness.to_dict() if record.witness else None,
                }
                for record in self.records
            ],
            "exit": self.exit_code,
        }
        return json.dumps(payload, indent=2) + "\n"


def check(report: Report, name: str, residual, identity: str, indices: Sequence) -> bool:
    """Record pass/fail for one identity instance.

    ``residual`` is anything with truthiness + str (a Poly); records the
    first failing instance only when the caller loops, by convention of
    calling this once per name with the first nonzero residual found.
    """
    if residual:
        report.add_fail(name, Witness(identity, tuple(indices), str(residual)))
        return False
    report.add_pass(name)
    return True
