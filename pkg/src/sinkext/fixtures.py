"""Small named graphs used throughout the tests, scripts and CLI.

``*_intro``: a three-vertex base with two 1-sink extensions and a common
simple target.  ``Z_fig``/``Z_fig_split``: one boundary outsplitting worked
out by hand.  ``*_ex26``: a two-vertex base whose extensions share a
Wojciech class but not an ideal lattice.  ``G_o3``: one vertex, three loops.
"""
from __future__ import annotations

from pathlib import Path

from .extension import SinkExtension, parse_extension, serialize_extension

TEXTS: dict[str, str] = {
    "G_intro": """\
v w1 base
v w2 base
v w3 base
e a w1 w1 base
e b w1 w2 base
e c w2 w3 base
e d w3 w2 base
""",
    "E1_intro": """\
v w1 base
v w2 base
v w3 base
v v1 ext
e a w1 w1 base
e b w1 w2 base
e c w2 w3 base
e d w3 w2 base
e p1 w1 v1 ext
e p2 w2 v1 ext
e p3 w3 v1 ext
e p4 w3 v1 ext
sink v1
""",
    "E2_intro": """\
v w1 base
v w2 base
v w3 base
v v2 ext
e a w1 w1 base
e b w1 w2 base
e c w2 w3 base
e d w3 w2 base
e q1 w1 v2 ext
e q2 w3 v2 ext
e q3 w3 v2 ext
e q4 w3 v2 ext
sink v2
""",
    "F_intro": """\
v w1 base
v w2 base
v w3 base
v v2 ext
e a w1 w1 base
e b w1 w2 base
e c w2 w3 base
e d w3 w2 base
e r1 w1 v2 ext
e r2 w1 v2 ext
e r3 w3 v2 ext
e r4 w3 v2 ext
e r5 w3 v2 ext
sink v2
""",
    "Z_fig": """\
v z base
v w base
v v ext
e h z z base
e f z w base
e g w z base
e e z v ext
sink v
""",
    "Z_fig_split": """\
v z base
v w base
v v ext
v v' ext
e h z z base
e f z w base
e g w z base
e e' v' v ext
e h' z v' ext
e g' w v' ext
sink v
""",
    "G_ex26": """\
v w1 base
v w2 base
e a1 w1 w1 base
e a2 w1 w1 base
e b w1 w2 base
e c1 w2 w2 base
e c2 w2 w2 base
""",
    "E1_ex26": """\
v w1 base
v w2 base
v v1 ext
e a1 w1 w1 base
e a2 w1 w1 base
e b w1 w2 base
e c1 w2 w2 base
e c2 w2 w2 base
e s w1 v1 ext
sink v1
""",
    "E2_ex26": """\
v w1 base
v w2 base
v v2 ext
e a1 w1 w1 base
e a2 w1 w1 base
e b w1 w2 base
e c1 w2 w2 base
e c2 w2 w2 base
e s w2 v2 ext
sink v2
""",
    "G_o3": """\
v u base
e l1 u u base
e l2 u u base
e l3 u u base
""",
    "o3_w1": """\
v u base
v v ext
e l1 u u base
e l2 u u base
e l3 u u base
e s1 u v ext
sink v
""",
    "o3_w2": """\
v u base
v v ext
e l1 u u base
e l2 u u base
e l3 u u base
e s1 u v ext
e s2 u v ext
sink v
""",
}

NAMES = tuple(TEXTS)


def load(name: str) -> SinkExtension:
    return parse_extension(TEXTS[name])


def write_fixtures(directory) -> list[Path]:
    """Write every fixture as ``<name>.ext`` in canonical serialization."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in NAMES:
        path = directory / f"{name}.ext"
        path.write_text(serialize_extension(load(name)))
        written.append(path)
    return written
