from __future__ import annotations

import abc
from typing import Any

from pydantic import BaseModel

__all__ = ["IdBenchModel"]


class IdBenchModel(BaseModel, abc.ABC):
    """An immutable idbench model"""

    def __init__(self, **data: Any) -> None:
        """"""
        # clear the docstring for pdoc
        super().__init__(**data)

    class Config:
        frozen = True
