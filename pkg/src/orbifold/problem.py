"""Line-oriented problem files.

    name Q12~E18
    ring left
      var u weight 2/5
      potential u^5 + v^3 + u*w^2
    ring right
      ...
    ansatz
      shifts_even 0,-8/15,-1/3,-1/5
      shifts_odd 0,-8/15,-1/3,-1/5
      grading_matrix q12.grading       (instead of the two shift lines)
    seed q12_seed.mf [perturb|noperturb]
    limits steps 1000000 polys 10000 seconds 60

Relative file references are resolved against the problem file's directory.
Lines starting with ``#`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .ansatz import AnsatzSpec, parse_grading_matrix, shifts_from_grading_matrix
from .groebner import Limits
from .mf import TensorRingPair, _parse_shift_list, parse_matrix_file
from .ring import GradedRing, ParseError, Potential, as_fraction, parse_polynomial, validate_potential


@dataclass
class RingBlock:
    weights: dict
    potential: str

    def build(self) -> Potential:
        ring = GradedRing.from_weights(self.weights)
        return validate_potential(parse_polynomial(self.potential, ring))


@dataclass
class ProblemFile:
    path: Optional[Path]
    name: str
    left: RingBlock
    right: RingBlock
    shifts_even: Optional[tuple] = None
    shifts_odd: Optional[tuple] = None
    grading_matrix: Optional[Path] = None
    seed: Optional[Path] = None
    perturb: bool = True
    limits: Optional[Limits] = None

    def pair(self) -> TensorRingPair:
        return TensorRingPair(self.left.build(), self.right.build())

    @property
    def has_ansatz(self) -> bool:
        return self.shifts_even is not None or self.grading_matrix is not None or self.seed is not None

    def shifts(self) -> tuple:
        if self.grading_matrix is not None:
            sharp, flat = parse_grading_matrix(self.grading_matrix.read_text())
            return shifts_from_grading_matrix(sharp, flat)
        if self.shifts_even is not None:
            return self.shifts_even, self.shifts_odd
        if self.seed is not None:
            head = self.seed.read_text().split("shifts", 1)[1].split()[0]
            even, _, odd = head.partition("|")
            return _parse_shift_list(even), _parse_shift_list(odd)
        raise ValueError("problem has no ansatz block")

    def spec(self, pair: Optional[TensorRingPair] = None, use_seed: bool = True) -> AnsatzSpec:
        pair = pair or self.pair()
        even, odd = self.shifts()
        seed = None
        if use_seed and self.seed is not None:
            mfile = parse_matrix_file(self.seed.read_text(), pair.ring, allow_markers=True)
            if (mfile.shifts_even, mfile.shifts_odd) != (tuple(even), tuple(odd)):
                raise ValueError("seed shifts disagree with the ansatz block")
            seed = (mfile.sharp, mfile.flat)
        return AnsatzSpec(pair, even, odd, seed=seed, perturb=self.perturb)


def _limits(words: list) -> Limits:
    if len(words) % 2:
        raise ParseError("limits expects key/value pairs")
    lim = Limits()
    for key, val in zip(words[::2], words[1::2]):
        if key == "steps":
            lim.steps = int(val)
        elif key == "polys":
            lim.polys = int(val)
        elif key == "seconds":
            lim.seconds = float(val)
        else:
            raise ParseError(f"unknown limit {key!r}")
    return lim


def parse_problem(text: str, path: Optional[Path] = None) -> ProblemFile:
    base = path.parent if path is not None else Path.cwd()
    rings = {}
    fields = {"name": path.stem if path is not None else "problem"}
    block = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        key = words[0]
        try:
            if key == "ring":
                if len(words) != 2 or words[1] not in ("left", "right"):
                    raise ParseError("expected 'ring left' or 'ring right'")
                block = words[1]
                if block in rings:
                    raise ParseError(f"duplicate ring {block}")
                rings[block] = {"weights": {}, "potential": None}
            elif key == "var":
                if block not in rings or len(words) != 4 or words[2] != "weight":
                    raise ParseError("expected 'var <name> weight <p/q>' inside a ring block")
                rings[block]["weights"][words[1]] = as_fraction(words[3])
            elif key == "potential":
                if block not in rings:
                    raise ParseError("potential outside a ring block")
                rings[block]["potential"] = line[len("potential"):].strip()
            elif key == "ansatz":
                block = "ansatz"
            elif key in ("shifts_even", "shifts_odd"):
                if block != "ansatz":
                    raise ParseError(f"{key} outside the ansatz block")
                fields[key] = _parse_shift_list("".join(words[1:]))
            elif key == "grading_matrix":
                if block != "ansatz":
                    raise ParseError("grading_matrix outside the ansatz block")
                fields["grading_matrix"] = base / words[1]
            elif key == "seed":
                block = None
                fields["seed"] = base / words[1]
                if len(words) > 2:
                    if words[2] not in ("perturb", "noperturb"):
                        raise ParseError("seed option must be 'perturb' or 'noperturb'")
                    fields["perturb"] = words[2] == "perturb"
            elif key == "limits":
                block = None
                fields["limits"] = _limits(words[1:])
            elif key == "name":
                block = None
                fields["name"] = " ".join(words[1:])
            else:
                raise ParseError(f"unknown keyword {key!r}")
        except (ParseError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    for side in ("left", "right"):
        if side not in rings or rings[side]["potential"] is None:
            raise ParseError(f"missing ring {side} with a potential")
    if ("shifts_even" in fields) != ("shifts_odd" in fields):
        raise ParseError("give both shifts_even and shifts_odd")
    for key in ("grading_matrix", "seed"):
        if key in fields and not fields[key].exists():
            raise ParseError(f"referenced file {fields[key]} does not exist")
    return ProblemFile(path, left=RingBlock(**rings["left"]), right=RingBlock(**rings["right"]), **fields)


def load_problem(path) -> ProblemFile:
    path = Path(path)
    return parse_problem(path.read_text(), path)
