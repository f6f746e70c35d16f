from pydantic import BaseModel


class HardSchema(BaseModel, extra="forbid"): ...


class FrozenSchema(BaseModel, extra="forbid", frozen=True, arbitrary_types_allowed=True): ...
