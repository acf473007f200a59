"""Input parsing and CSV output.

Inputs are JSON files; graph and Dehn parameter arguments may also name a
bundled surface (`genus2`, `one_holed_torus`, `four_holed_sphere`) or a
bundled parameter file (`m200`, `m110`). Outputs are CSV preceded by a
provenance header of `# ` lines.
"""

import csv
import json
import logging
import math
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, List, Optional, Sequence, Union

from . import __version__
from .errors import ContractViolation, DehnFormatError, InputError, MissingInputFile
from .moduli import AngleVector, TwistVector
from .surface import DehnParameter, PantsGraph

logger = logging.getLogger(__name__)

BUNDLED_PACKAGE = 'curvetrace.surfaces'
TOOL_NAME = 'curvetrace'


def bundled_names() -> List[str]:
    """Names of the surfaces and parameter files shipped with the package.

    Returns:
        Sorted names, without the .json suffix
    """
    return sorted(p.name[:-5] for p in resources.files(BUNDLED_PACKAGE).iterdir()
                  if p.name.endswith('.json'))


def _read_json(source: Union[str, Path]):
    """Load JSON from a path, or from a bundled file named without a directory."""
    path = Path(source)
    if path.exists():
        try:
            text = path.read_text(encoding='utf-8')
        except (OSError, UnicodeDecodeError) as e:
            raise InputError(f"{source}: cannot read ({e})")
    else:
        name = path.name[:-5] if path.name.endswith('.json') else path.name
        bundled = resources.files(BUNDLED_PACKAGE) / f"{name}.json"
        if path.parent != Path('.') or not bundled.is_file():
            raise MissingInputFile(source)
        logger.debug("using bundled %s", name)
        text = bundled.read_text()
    try:
        return json.loads(text)
    except ValueError as e:
        raise InputError(f"{source}: not valid JSON ({e})")


def load_graph(source: Union[str, Path]) -> PantsGraph:
    """Read a graph file or bundled surface.

    Args:
        source: Path, or a bundled name such as `genus2`

    Returns:
        PantsGraph, not yet validated

    Raises:
        InputError: If the file is missing, unreadable or malformed
    """
    return PantsGraph.from_dict(_read_json(source))


def parse_dehn(data) -> DehnParameter:
    """Parse an edge-id -> [m, t] map.

    Raises:
        DehnFormatError: If a value is not a pair of integers
    """
    if not isinstance(data, dict):
        raise DehnFormatError("Dehn parameter must be an object mapping edge ids to [m, t]")
    pairs = {}
    for edge, value in data.items():
        if (not isinstance(value, (list, tuple)) or len(value) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)):
            raise DehnFormatError(f"edge {edge}: expected [m, t] integers, got {value!r}")
        pairs[str(edge)] = (value[0], value[1])
    return DehnParameter.from_pairs(pairs)


def load_dehn(source: Union[str, Path]) -> DehnParameter:
    return parse_dehn(_read_json(source))


def _edge_values(data, what: str, source) -> dict:
    if not isinstance(data, dict):
        raise InputError(f"{source}: {what} must be an object mapping edge ids to numbers")
    values = {}
    for edge, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InputError(f"{source}: {what} on {edge} must be a number")
        values[str(edge)] = float(value)
    return values


def load_angles(source: Union[str, Path], g: PantsGraph) -> AngleVector:
    values = _edge_values(_read_json(source), 'angle', source)
    missing = [e for e in g.edge_ids() if e not in values]
    if missing:
        raise InputError(f"{source}: no angle for edge(s) {', '.join(missing)}")
    return AngleVector({e: values[e] for e in g.edge_ids()})


def load_twists(source: Optional[Union[str, Path]], g: PantsGraph) -> TwistVector:
    if source is None:
        return TwistVector.zero(g)
    values = _edge_values(_read_json(source), 'twist', source)
    internal = g.internal_edges()
    extra = [e for e in values if e not in internal]
    if extra:
        raise InputError(f"{source}: twists only on internal edges, got {', '.join(extra)}")
    return TwistVector({e: values.get(e, 0.0) for e in internal})


def write_json(path: Union[str, Path], data) -> None:
    with open(path, 'w') as f:
        json.dump(data, f, indent=2)


def format_float(value: float) -> str:
    """17 significant digits; refuses NaN and infinities."""
    value = float(value)
    if not math.isfinite(value):
        raise ContractViolation(f"refusing to write non-finite value {value}")
    return format(value, '.17g')


def provenance_header(command_line: Sequence[str], seed: Optional[int]) -> List[str]:
    """Lines written as `# ` comments before every table.

    Args:
        command_line: Program name and arguments
        seed: Sampling seed, None when nothing was sampled

    Returns:
        Tool and version, command line, seed
    """
    lines = [f"{TOOL_NAME} {__version__}", "command: " + ' '.join(command_line)]
    lines.append(f"seed: {seed if seed is not None else 'none'}")
    return lines


def _cell(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_csv(stream: IO[str], header: Sequence[str], columns: Sequence[str],
              rows: Iterable[Sequence], trailer: Sequence[str] = ()) -> None:
    """Write a provenance header, a CSV table and optional `# ` trailer lines.

    Rows are formatted completely before anything is written, so a
    non-finite value aborts the write.
    """
    formatted = [[_cell(v) for v in row] for row in rows]
    for line in header:
        stream.write(f"# {line}\n")
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    writer.writerows(formatted)
    for line in trailer:
        stream.write(f"# {line}\n")
