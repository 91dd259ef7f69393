import re
import traceback
from enum import Enum
from fractions import Fraction
from math import gcd
from functools import reduce
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union
from pydantic import (
    BaseModel, ConfigDict, Field,
    PlainSerializer, PlainValidator,
    field_serializer, field_validator, model_serializer, model_validator
)


# Exception
class OrbikitException(Exception):
    default_code = "E0000"

    def __init__(self, error_code=None, message="Error", root_cause=None):
        self.error_code = error_code or self.default_code
        self.message = message
        self.root_cause = root_cause

    def __str__(self):
        return self.message


class SignatureSyntaxError(OrbikitException):
    default_code = "E1001"


class InvalidOrder(OrbikitException):
    default_code = "E1002"


class InvalidGenus(OrbikitException):
    default_code = "E1003"


class NoMirrors(OrbikitException):
    default_code = "E1004"


class UnsupportedSignature(OrbikitException):
    default_code = "E1005"


class IncompatibleComplex(OrbikitException):
    default_code = "E2001"


class NotSpherical(OrbikitException):
    default_code = "E3001"


class NotASurface(OrbikitException):
    default_code = "E4001"


class NotSimplicial(OrbikitException):
    default_code = "E4002"


class ClosureBoundExceeded(OrbikitException):
    default_code = "E4004"


class ChiMismatch(OrbikitException):
    default_code = "E4005"


class NonOrientableUnsupported(OrbikitException):
    default_code = "E4006"


class MalformedCertificate(OrbikitException):
    default_code = "E5001"


class NotASubgroup(OrbikitException):
    default_code = "E5002"


class InvalidWeights(OrbikitException):
    default_code = "E6001"


class WrongDimension(OrbikitException):
    default_code = "E6002"


class InvalidProfile(OrbikitException):
    default_code = "E7001"


class BadIntervals(OrbikitException):
    default_code = "E7002"


class OrderMismatch(OrbikitException):
    default_code = "E7003"


class BadOrbifold(OrbikitException):
    default_code = "E7004"


class SignMismatch(OrbikitException):
    default_code = "E7005"


class FlatIndeterminate(OrbikitException):
    default_code = "E7006"


class CommandNotFoundException(OrbikitException):
    default_code = "E9001"


class UsageError(OrbikitException):
    default_code = "E9002"


# Rational
def _to_rational(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("boolean is not a rational number")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as ex:
            raise ValueError(f"invalid rational '{value}'") from ex
    raise ValueError(f"invalid rational {value!r}")


Rational = Annotated[
    Fraction,
    PlainValidator(_to_rational),
    PlainSerializer(lambda v: str(v), return_type=str)
]


# Signature
SIGNATURE_PATTERN = re.compile(
    r"^([ON])(\d+)\(((?:\d+(?:,\d+)*)?)\)((?:\*\((?:\d+(?:,\d+)*)?\))*)$")
MIRROR_PATTERN = re.compile(r"\*\(([^)]*)\)")


def check_orders(orders, kind):
    for order in orders:
        if order < 2:
            raise InvalidOrder(
                message=f"{kind} order must be at least 2, got {order}")


def minimal_dihedral_form(corners):
    corners = tuple(corners)
    if not corners:
        return corners
    candidates = []
    for seq in (corners, tuple(reversed(corners))):
        candidates.extend(seq[i:] + seq[:i] for i in range(len(seq)))
    return min(candidates)


def _split_orders(text):
    return tuple(int(t) for t in text.split(",")) if text else ()


class MirrorComponent(BaseModel):
    model_config = ConfigDict(frozen=True)

    corners: Tuple[int, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _from_sequence(cls, data):
        if isinstance(data, (list, tuple)):
            return {"corners": tuple(data)}
        return data

    @field_validator("corners")
    @classmethod
    def _canonical_corners(cls, corners):
        check_orders(corners, "corner")
        return minimal_dihedral_form(corners)

    @model_serializer
    def _as_list(self):
        return list(self.corners)


class Signature(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    orientable: bool = True
    genus: int = 0
    cone_points: Tuple[int, ...] = Field(default=(), alias="cones")
    boundary: Tuple[MirrorComponent, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _from_text(cls, data):
        if not isinstance(data, str):
            return data
        compact = re.sub(r"\s+", "", data)
        match = SIGNATURE_PATTERN.match(compact)
        if not match:
            raise SignatureSyntaxError(
                message=f"Malformed signature '{data}'")
        base, genus, cones, mirrors = match.groups()
        return {
            "orientable": base == "O",
            "genus": int(genus),
            "cones": _split_orders(cones),
            "boundary": [_split_orders(m)
                         for m in MIRROR_PATTERN.findall(mirrors)]
        }

    @field_validator("cone_points")
    @classmethod
    def _canonical_cones(cls, cone_points):
        check_orders(cone_points, "cone")
        return tuple(sorted(cone_points, reverse=True))

    @field_validator("boundary")
    @classmethod
    def _canonical_boundary(cls, boundary):
        return tuple(sorted(boundary, key=lambda m: m.corners))

    @model_validator(mode="after")
    def _check_genus(self):
        if self.genus < 0:
            raise InvalidGenus(message=f"genus must be non-negative, got {self.genus}")
        if not self.orientable and self.genus < 1:
            raise InvalidGenus(
                message="non-orientable base needs at least one crosscap")
        return self

    @classmethod
    def from_text(cls, text: str) -> "Signature":
        return cls.model_validate(text)

    @property
    def is_closed(self) -> bool:
        return len(self.boundary) == 0

    @property
    def corner_points(self) -> Tuple[int, ...]:
        return tuple(q for m in self.boundary for q in m.corners)

    @property
    def singular_orders(self) -> Tuple[int, ...]:
        # local group orders of the isolated singular points: cones, then corners
        return self.cone_points + tuple(2 * q for q in self.corner_points)

    def __str__(self):
        text = "{}{}({})".format(
            "O" if self.orientable else "N", self.genus,
            ",".join(str(p) for p in self.cone_points))
        for mirror in self.boundary:
            text += "*({})".format(",".join(str(q) for q in mirror.corners))
        return text


# Stratified complex
class Cell(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    dim: int = Field(ge=0, le=2)
    faces: Tuple[str, ...] = ()
    n: int = Field(default=1, ge=1)


class StratifiedComplex(BaseModel):
    model_config = ConfigDict(frozen=True)

    cells: Tuple[Cell, ...] = ()

    def of_dim(self, dim: int) -> List[Cell]:
        return [c for c in self.cells if c.dim == dim]

    def counts(self) -> Tuple[int, int, int]:
        return tuple(len(self.of_dim(d)) for d in range(3))


class StratumSummary(BaseModel):
    label: str
    order: int
    chi_c: int


# Fundamental group
class GroupPresentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    generators: Tuple[str, ...] = ()
    relators: Tuple[Tuple[str, ...], ...] = ()

    @model_validator(mode="after")
    def _check_symbols(self):
        names = set(self.generators)
        for relator in self.relators:
            for symbol in relator:
                if symbol.removesuffix("^-1") not in names:
                    raise ValueError(f"unknown generator in symbol '{symbol}'")
        return self

    @staticmethod
    def format_word(word) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = word[i].removesuffix("^-1")
            sign = "-" if word[i].endswith("^-1") else ""
            count = j - i
            if count == 1 and not sign:
                parts.append(name)
            else:
                parts.append(f"{name}^{sign}{count}")
            i = j
        return "*".join(parts)

    def __str__(self):
        return "< {} | {} >".format(
            ", ".join(self.generators),
            ", ".join(self.format_word(r) for r in self.relators))


class GeometryClass(str, Enum):
    Bad = "Bad"
    Spherical = "Spherical"
    Euclidean = "Euclidean"
    Hyperbolic = "Hyperbolic"


# Simplicial surfaces and actions
class SimplicialSurface(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...]
    triangles: Tuple[Tuple[str, str, str], ...]


class PermutationSpec(BaseModel):
    perm: Dict[str, str]


class ActionSpec(BaseModel):
    surface: Optional[SimplicialSurface] = None
    generators: List[PermutationSpec] = []

    @classmethod
    def from_mappings(cls, surface, mappings):
        return cls(surface=surface,
                   generators=[PermutationSpec(perm=m) for m in mappings])


class QuotientResult(BaseModel):
    complex: StratifiedComplex
    signature: Optional[Signature]
    group_order: int
    chi_cover: Rational
    chi_quotient: Rational
    note: Optional[str] = None


# Covering
class ClosedOrbifold(BaseModel):
    kind: Literal["closed"] = "closed"
    signature: Signature

    @field_serializer("signature")
    def _signature_text(self, signature):
        return str(signature)


class LocalCone(BaseModel):
    kind: Literal["cone"] = "cone"
    order: int = Field(ge=2)


class LocalRegular(BaseModel):
    kind: Literal["regular"] = "regular"


class Fiber(BaseModel):
    point: str = ""
    order: int = Field(ge=1)
    preimages: Tuple[int, ...]


class CoveringCertificate(BaseModel):
    base: Union[ClosedOrbifold, LocalCone] = Field(discriminator="kind")
    cover: Union[ClosedOrbifold, LocalCone, LocalRegular] = \
        Field(discriminator="kind")
    degree: int
    fibers: Tuple[Fiber, ...] = ()


class FiberEnumeration(BaseModel):
    n: int
    r: int
    fibers: List[Tuple[int, ...]]


# Weighted projective spaces
class WeightedProjectiveSpace(BaseModel):
    model_config = ConfigDict(frozen=True)

    weights: Tuple[int, ...]

    @model_validator(mode="before")
    @classmethod
    def _from_sequence(cls, data):
        if isinstance(data, (list, tuple)):
            return {"weights": tuple(data)}
        return data

    @field_validator("weights")
    @classmethod
    def _check_weights(cls, weights):
        if len(weights) < 2:
            raise InvalidWeights(message="at least two weights are required")
        if any(w < 1 for w in weights):
            raise InvalidWeights(message=f"weights must be positive: {weights}")
        if reduce(gcd, weights) != 1:
            raise InvalidWeights(
                message=f"weights {weights} have common divisor "
                        f"{reduce(gcd, weights)}")
        return weights

    @property
    def n(self) -> int:
        return len(self.weights) - 1


class StrataEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    indices: Tuple[int, ...]
    gcd: int
    singular: bool

    @property
    def local_group(self) -> str:
        return f"Z{self.gcd}" if self.singular else "1"


class StrataPoset(BaseModel):
    model_config = ConfigDict(frozen=True)

    weights: Tuple[int, ...]
    strata: Tuple[StrataEntry, ...]

    def entry(self, indices) -> StrataEntry:
        key = tuple(sorted(indices))
        for stratum in self.strata:
            if stratum.indices == key:
                return stratum
        raise KeyError(key)

    def singular_entries(self) -> List[StrataEntry]:
        return [s for s in self.strata if s.singular]

    @staticmethod
    def is_below(lower, upper) -> bool:
        return set(lower) <= set(upper)


class WpsEuler(BaseModel):
    weights: Tuple[int, ...]
    euler: Rational


# Geometry
class SpindleMetric(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=1)
    q: int = Field(ge=1)
    profile: Literal["smoothstep", "linear", "cosine"] = "smoothstep"
    amplitude: float = 0.0


class SpindleReport(BaseModel):
    total_curvature: float
    area: float
    target: float
    rel_error: float


class VectorFieldZero(BaseModel):
    model_config = ConfigDict(frozen=True)

    local_order: int = Field(ge=1)
    lift_index: int


# Report
class Check(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    detail: str = ""


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(alias="pass")
    checks: List[Check] = []

    @classmethod
    def from_checks(cls, checks):
        return cls(passed=all(c.passed for c in checks), checks=checks)


class ErrorReport(BaseModel):
    code: str
    message: str
    detail: Optional[str] = None

    @classmethod
    def from_exception(cls, ex: Exception, debug=False):
        if isinstance(ex, OrbikitException):
            error_code = ex.error_code
            message = ex.message
        else:
            error_code = "E9999"
            message = "Unexpected error"

        return cls(
            code=error_code,
            message=message,
            detail=f"{str(ex)}\n{traceback.format_exc()}"
            if debug else None
        )


# CLI
class Settings(BaseModel):
    max_cosets: int = Field(default=10000, ge=1)
    closure_bound: int = Field(default=20000, ge=1)
    intervals: int = Field(default=4096, ge=4)
    tolerance: float = Field(default=1e-6, gt=0)
    subdivisions: int = Field(default=2, ge=1)


class EulerSummary(BaseModel):
    signature: Signature
    closed_form: Rational
    cell_sum: Rational
    strata_sum: Rational

    @property
    def agree(self) -> bool:
        return self.closed_form == self.cell_sum == self.strata_sum


class Classification(BaseModel):
    signature: Signature
    geometry: GeometryClass
    euler: Rational


class FundamentalSummary(BaseModel):
    presentation: GroupPresentation
    order: Union[int, str]


class AreaResult(BaseModel):
    signature: Signature
    curvature: Rational
    area_over_pi: Rational


class CommandResult(BaseModel):
    text: str = ""
    data: Any = None
    passed: bool = True
