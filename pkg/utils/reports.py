"""Diagnostic reports shared by all checks and commands"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ERROR = "error"

EXIT_CODES = {STATUS_PASS: 0, STATUS_FAIL: 1, STATUS_ERROR: 2}


@dataclass
class Finding:
    """
    One violated rule at one location
    """

    rule: str
    location: str
    message: str

    def to_dict(self) -> Dict[str, str]:
        return {"rule": self.rule, "location": self.location, "message": self.message}


@dataclass
class Report:
    """
    Outcome of a check or command

    Findings keep the order in which they were added; every check adds them
    in a fixed order (by slice, member index, cone), so reports are stable.
    """

    command: str
    status: str = STATUS_PASS
    findings: List[Finding] = field(default_factory=list)
    payload: Dict[str, Any] = field(default_factory=dict)

    def add(self, rule: str, location: str, message: str) -> None:
        """Record a rule failure"""
        self.findings.append(Finding(rule, location, message))
        if self.status == STATUS_PASS:
            self.status = STATUS_FAIL

    def add_error(self, rule: str, location: str, message: str) -> None:
        """Record a finding that makes the input unusable"""
        self.findings.append(Finding(rule, location, message))
        self.status = STATUS_ERROR

    def extend(self, other: "Report") -> "Report":
        """Append the findings of another report, keeping the worse status"""
        self.findings.extend(other.findings)
        if EXIT_CODES[other.status] > EXIT_CODES[self.status]:
            self.status = other.status
        return self

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def rules(self) -> List[str]:
        """Rule ids of all findings, in order"""
        return [finding.rule for finding in self.findings]

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "command": self.command,
            "status": self.status,
            "findings": [finding.to_dict() for finding in self.findings],
        }
        result.update(self.payload)
        return result
