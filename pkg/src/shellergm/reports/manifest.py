"""Run manifest written next to every set of outputs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

MANIFEST_NAME = "manifest.json"


class RunManifest(BaseModel):
    """Everything needed to reproduce the outputs of one subcommand."""

    subcommand: str = Field(description="CLI subcommand that produced the outputs")
    version: str = Field(description="shellergm version")
    inputs: List[str] = Field(default_factory=list, description="Input paths or dataset names")
    seed: Optional[int] = Field(default=None, description="Seed used, generated when not supplied")
    overrides: Dict[str, Any] = Field(
        default_factory=dict, description="Command-line values that replaced config values"
    )
    output_directory: str = Field(description="Directory holding the outputs")
    outputs: List[str] = Field(default_factory=list, description="Files written, relative names")
    config: Dict[str, Any] = Field(default_factory=dict, description="Resolved configuration")

    def write(self, output_dir: Path) -> Path:
        path = Path(output_dir) / MANIFEST_NAME
        with path.open("w", encoding="utf-8") as f:
            json.dump(self.model_dump(mode="json"), f, indent=2, sort_keys=True)
            f.write("\n")
        return path

    @classmethod
    def read(cls, output_dir: Path) -> "RunManifest":
        path = Path(output_dir) / MANIFEST_NAME
        with path.open("r", encoding="utf-8") as f:
            return cls(**json.load(f))
