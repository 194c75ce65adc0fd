"""Game-log parsing and reduction to sufficient statistics.

A game log is delimited text with a header ``team,opponent,elapsed_minutes``
and an optional ``goal_index`` column (how many goals the elapsed time
covers, default 3).  A points file is ``team,points``.  The 2017-18 season
fixtures for the Toronto Maple Leafs (50 games) and the Montreal Canadiens
(38 games) ship with the package, together with both teams' season points.

Reduction takes the arithmetic mean of a team's elapsed times.  For the
rival statistic the mean can additionally be rescaled by a season-points
factor; the three modes make the choice explicit because the points-based
scale composition admits more than one reading:

* ``raw``: the plain mean (this reproduces the reference summaries best);
* ``points_ratio``: mean times R_opponent / R_team;
* ``points_ratio_squared``: mean times (R_opponent / R_team)^2, the factor
  that converts the rival's scale into the own team's parameterization.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from importlib import resources

from .errors import EmptySelectionError, GameLogError
from .predictive import SufficientStat

X2_MODES = ("raw", "points_ratio", "points_ratio_squared")

_LOG_HEADER = ("team", "opponent", "elapsed_minutes")
_MAX_MINUTES = 60.0


@dataclass(frozen=True)
class GameRecord:
    """One row of a game log: minutes until the goal_index-th goal."""

    team: str
    opponent: str
    elapsed_minutes: float
    goal_index: int = 3

    def __post_init__(self):
        if not self.team or not self.opponent:
            raise GameLogError("team and opponent must be non-empty")
        if self.team == self.opponent:
            raise GameLogError(f"team equals opponent: {self.team!r}")
        if not 0.0 < self.elapsed_minutes <= _MAX_MINUTES:
            raise GameLogError(
                f"elapsed_minutes {self.elapsed_minutes} outside (0, {_MAX_MINUTES}]"
            )
        if self.goal_index < 1:
            raise GameLogError(f"goal_index {self.goal_index} must be >= 1")


@dataclass(frozen=True)
class SeasonPoints:
    team: str
    points: int

    def __post_init__(self):
        if not self.team:
            raise GameLogError("team must be non-empty")
        if self.points <= 0:
            raise GameLogError(f"points {self.points} must be positive")


def _open_text(source):
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline="")
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode("utf-8"))
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return io.StringIO(data)
    raise GameLogError(f"cannot read game log from {type(source).__name__}")


def parse_game_log(source) -> list[GameRecord]:
    """Parse a game log into validated records.

    Args:
        source: path, bytes, or a file-like object; UTF-8, comma-separated,
            header required.

    Raises:
        GameLogError: on a missing or wrong header, or on any malformed
            row; the error carries the 1-based line number.
    """
    records = []
    with _open_text(source) as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise GameLogError("empty file: header row required", line=1) from None
        header = [h.strip() for h in header]
        if tuple(header[:3]) != _LOG_HEADER or len(header) > 4 or (
            len(header) == 4 and header[3] != "goal_index"
        ):
            raise GameLogError(
                f"header must be team,opponent,elapsed_minutes[,goal_index]; got {header}",
                line=1,
            )
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise GameLogError(f"expected {len(header)} fields, got {len(row)}", line=line_no)
            try:
                elapsed = float(row[2])
            except ValueError:
                raise GameLogError(f"bad elapsed_minutes {row[2]!r}", line=line_no) from None
            goal_index = 3
            if len(row) == 4:
                try:
                    goal_index = int(row[3])
                except ValueError:
                    raise GameLogError(f"bad goal_index {row[3]!r}", line=line_no) from None
            try:
                records.append(
                    GameRecord(
                        team=row[0].strip(),
                        opponent=row[1].strip(),
                        elapsed_minutes=elapsed,
                        goal_index=goal_index,
                    )
                )
            except GameLogError as exc:
                raise GameLogError(str(exc), line=line_no) from None
    return records


def serialize_game_log(records: list[GameRecord], dest) -> None:
    """Write records in the same format parse_game_log reads."""

    def _write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(_LOG_HEADER) + ["goal_index"])
        for rec in records:
            writer.writerow([rec.team, rec.opponent, repr(rec.elapsed_minutes), rec.goal_index])

    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            _write(fh)
    else:
        _write(dest)


def parse_points(source) -> list[SeasonPoints]:
    """Parse a season points file with header ``team,points``."""
    out = []
    with _open_text(source) as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise GameLogError("empty file: header row required", line=1) from None
        if header != ["team", "points"]:
            raise GameLogError(f"header must be team,points; got {header}", line=1)
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise GameLogError(f"expected 2 fields, got {len(row)}", line=line_no)
            try:
                pts = int(row[1])
            except ValueError:
                raise GameLogError(f"bad points {row[1]!r}", line=line_no) from None
            try:
                out.append(SeasonPoints(team=row[0].strip(), points=pts))
            except GameLogError as exc:
                raise GameLogError(str(exc), line=line_no) from None
    return out


def reduce_to_stat(
    records: list[GameRecord],
    team: str,
    r: float = 3.0,
    x2_mode: str = "raw",
    points: tuple[int, int] | None = None,
) -> SufficientStat:
    """Reduce a team's game records to a single sufficient statistic.

    Args:
        records: parsed game records (any teams; filtered here).
        team: team whose rows to keep.
        r: gamma shape the statistic was observed under.
        x2_mode: one of ``raw``, ``points_ratio``, ``points_ratio_squared``.
        points: ``(R_team, R_opponent)`` season points; required unless
            ``x2_mode`` is ``raw``.

    Returns:
        SufficientStat with x = mean elapsed time times the mode's factor.
    """
    if x2_mode not in X2_MODES:
        raise GameLogError(f"x2_mode must be one of {X2_MODES}, got {x2_mode!r}")
    selected = [rec.elapsed_minutes for rec in records if rec.team == team]
    if not selected:
        raise EmptySelectionError(f"no records for team {team!r}")
    mean = sum(selected) / len(selected)
    if x2_mode == "raw":
        factor = 1.0
    else:
        if points is None:
            raise GameLogError(f"x2_mode {x2_mode!r} needs (R_team, R_opponent) points")
        r_team, r_opp = points
        if r_team <= 0 or r_opp <= 0:
            raise GameLogError("season points must be positive")
        factor = r_opp / r_team
        if x2_mode == "points_ratio_squared":
            factor = factor**2
    return SufficientStat(x=mean * factor, r=r)


def _fixture(name: str) -> Path:
    return Path(str(resources.files("goaltime").joinpath("data", name)))


def toronto_fixture_path() -> Path:
    """Bundled 2017-18 Toronto Maple Leafs third-goal log (50 games)."""
    return _fixture("toronto_2017_18.csv")


def canadiens_fixture_path() -> Path:
    """Bundled 2017-18 Montreal Canadiens third-goal log (38 games)."""
    return _fixture("canadiens_2017_18.csv")


def points_fixture_path() -> Path:
    """Bundled 2017-18 season points for both fixture teams."""
    return _fixture("points_2017_18.csv")
