from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from GenFlag.algebra.chains import ChainSpec
from GenFlag.algebra.flag_spec import GeneralizedFlagSpec
from GenFlag.errors import TypeMismatchError
from GenFlag.varieties.isotropic import IsotropicFlagSpec
from GenFlag.varieties.picard import PicElement
from GenFlag.varieties.tower import FiniteFlag

Body = Union[GeneralizedFlagSpec, IsotropicFlagSpec, ChainSpec, FiniteFlag, PicElement]


class DocumentKind(Enum):
    FLAG = "flag"
    CHAIN = "chain"
    ISOTROPIC = "isotropic"
    FINITE = "finite"
    PIC = "pic"


@dataclass(frozen=True)
class SpecDocument:
    """A parsed ``.flag`` document: its header kind and name, and the validated object."""

    kind: DocumentKind
    name: str
    body: Body

    @property
    def spec(self) -> GeneralizedFlagSpec | IsotropicFlagSpec:
        """The flag the document describes, whatever its kind (the base flag of a Picard class)."""
        if isinstance(self.body, PicElement):
            return self.body.spec
        if isinstance(self.body, (GeneralizedFlagSpec, IsotropicFlagSpec)):
            return self.body
        raise TypeMismatchError(f"a {self.kind.value} document does not describe a flag spec")
