"""V-representation schemas."""
from typing import Tuple

from pydantic import field_validator, model_validator

from shared.schemas.common import BaseSchema
from shared.schemas.constraint import SubsetIndex
from shared.utils.helpers import gcd_of


class Ray(BaseSchema):
    """Primitive integer direction over a SubsetIndex."""

    coordinates: Tuple[int, ...]

    @field_validator("coordinates")
    @classmethod
    def primitive(cls, v):
        g = gcd_of(v)
        if g == 0:
            raise ValueError("ray must be nonzero")
        if g != 1:
            raise ValueError("ray must be primitive (gcd 1)")
        return v


class ConeVRep(BaseSchema):
    """Extreme rays plus a basis of the lineality space."""

    index: SubsetIndex
    rays: Tuple[Ray, ...] = ()
    lineality: Tuple[Ray, ...] = ()

    @model_validator(mode="after")
    def check_dimensions(self):
        dimension = len(self.index)
        for ray in self.rays + self.lineality:
            if len(ray.coordinates) != dimension:
                raise ValueError("ray dimension does not match index")
        return self

    def ray_set(self):
        return {r.coordinates for r in self.rays}
