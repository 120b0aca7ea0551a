"""Tri-state certificates.

Every decision procedure in the toolkit returns one of these instead of a
bare boolean: the verdict is "proved", "refuted", or "inconclusive", the
witness is a JSON-serializable payload sufficient for an independent
replay, and caps records every bound that was in force.  Proved witnesses
replay by normal-form identity checks; refuted witnesses either carry a
directly checkable obstruction (for example a pair of merging points) or
replay by deterministic recomputation of the bounded search.
"""

from __future__ import annotations

PROVED = "proved"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


class Certificate:
    """Immutable verdict + witness + caps triple."""

    __slots__ = ("verdict", "kind", "witness", "caps")

    def __init__(self, verdict, kind, witness=None, caps=None):
        if verdict not in (PROVED, REFUTED, INCONCLUSIVE):
            raise ValueError(f"bad verdict {verdict!r}")
        object.__setattr__(self, "verdict", verdict)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "witness", dict(witness or {}))
        object.__setattr__(self, "caps", dict(caps or {}))

    def __setattr__(self, *a):
        raise AttributeError("Certificate is immutable")

    @property
    def proved(self):
        return self.verdict == PROVED

    @property
    def refuted(self):
        return self.verdict == REFUTED

    @property
    def inconclusive(self):
        return self.verdict == INCONCLUSIVE

    def to_json(self):
        return {
            "verdict": self.verdict,
            "kind": self.kind,
            "witness": self.witness,
            "caps": self.caps,
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["verdict"], data["kind"], data.get("witness"),
                   data.get("caps"))

    def __repr__(self):
        return f"Certificate({self.verdict}, {self.kind}, {self.witness})"


def proved(kind, witness=None, caps=None):
    return Certificate(PROVED, kind, witness, caps)


def refuted(kind, witness=None, caps=None):
    return Certificate(REFUTED, kind, witness, caps)


def inconclusive(kind, witness=None, caps=None):
    return Certificate(INCONCLUSIVE, kind, witness, caps)
