"""Trace sinks for optimization runs."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import IO, List, Optional, Union

from hyptree.exceptions import ParseError
from hyptree.models import TraceRecord
from hyptree.seqmodel.alignment import Alignment
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceReference:
    """What trace records are compared against.

    With a ``tree`` every record carries the Robinson-Foulds distance from the
    topology inferred at that point; with an ``alignment`` it also carries the
    log-likelihood of that topology after branch-length tuning.
    """

    tree: Optional[Tree] = None
    alignment: Optional[Alignment] = None


class TraceSink(ABC):
    """Destination for trace records."""

    @abstractmethod
    def emit(self, record: TraceRecord) -> None:
        """Accept one record."""

    def close(self) -> None:
        """Release any resources held by the sink."""

    def __enter__(self) -> "TraceSink":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


class ListTraceSink(TraceSink):
    """Keep records in memory."""

    def __init__(self) -> None:
        self.records: List[TraceRecord] = []

    def emit(self, record: TraceRecord) -> None:
        self.records.append(record)


class JsonlTraceSink(TraceSink):
    """Write one JSON object per record: iteration, objective, max_step, rf, tree_loglik."""

    def __init__(self, target: Union[str, Path, IO[str]]) -> None:
        if isinstance(target, (str, Path)):
            self._stream: IO[str] = open(target, "w")
            self._owned = True
        else:
            self._stream = target
            self._owned = False

    def emit(self, record: TraceRecord) -> None:
        self._stream.write(record.to_json() + "\n")
        self._stream.flush()

    def close(self) -> None:
        if self._owned and not self._stream.closed:
            self._stream.close()


def read_trace(path: Union[str, Path]) -> List[TraceRecord]:
    """Read a JSON-lines trace file.

    Raises:
        ParseError: If a line is not a valid trace record
    """
    records = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(TraceRecord.model_validate_json(line))
        except ValueError as e:
            raise ParseError("Invalid trace record", f"{path}:{lineno}: {e}")
    return records
