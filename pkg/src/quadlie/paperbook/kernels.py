"""Printed spanning sets for the radicals of the B^{0;0;A} forms.

Two printed elements lack their leading bracket (``[[[x2,x1],x1],x1],x2]``);
they are stored here with the bracket restored.  The entry whose sign is
illegible is stored under both readings and resolved by computation.
"""

from __future__ import annotations

from ..freenilp import FreeNilpotent, LieElement

__all__ = ["KERNEL_SPANS", "GARBLED_READINGS", "combination"]

# (family, A2 upper triangle) -> printed spanning elements
KERNEL_SPANS = {
    ("B25", (1, 0, 0)): (
        "[[x2,x1],x2]",
        "[[[x2,x1],x1],x2]",
        "[[[x2,x1],x2],x2]",
        "[[[[x2,x1],x1],x1],x2]+[[[x2,x1],x1],[x2,x1]]",
        "[[[[x2,x1],x1],x2],x2]",
        "[[[x2,x1],x2],[x2,x1]]",
        "[[[[x2,x1],x2],x2],x2]",
    ),
    ("B25", (1, 0, 1)): (
        "[[[x2,x1],x1],x2]",
        "[[[x2,x1],x2],x2]-[[[x2,x1],x1],x1]",
        "[[[x2,x1],x1],[x2,x1]]+[[[[x2,x1],x1],x1],x2]",
        "[[[[x2,x1],x1],x2],x2]",
        "[[[x2,x1],x2],[x2,x1]]-[[[[x2,x1],x1],x1],x1]",
        "[[[[x2,x1],x2],x2],x2]-[[[[x2,x1],x1],x1],x2]",
    ),
    ("B25", (1, 0, -1)): (
        "[[[x2,x1],x1],x2]",
        "[[[x2,x1],x1],x1]+[[[x2,x1],x2],x2]",
        "[[[[x2,x1],x1],x1],x2]+[[[x2,x1],x1],[x2,x1]]",
        "[[[[x2,x1],x1],x2],x2]",
        "[[[[x2,x1],x1],x1],x1]+[[[x2,x1],x2],[x2,x1]]",
        "[[[[x2,x1],x1],x1],x2]+[[[[x2,x1],x2],x2],x2]",
    ),
    ("B33", (1, 0, 0, 1, 0, 0)): (
        "[x3,x2]",
        "[[x2,x1],x3]",
        "[[x3,x1],x2]",
        "[[x3,x1],x3]-[[x2,x1],x2]",
        "[[x3,x2],x2]",
        "[[x3,x2],x3]",
    ),
    ("B33", (1, 0, 0, 1, 0, 1)): (
        "[[x2,x1],x3]",
        "[[x3,x1],x2]",
        "[[x3,x1],x3]-[[x2,x1],x2]",
        "[[x3,x2],x2]-[[x3,x1],x1]",
        None,  # garbled, see GARBLED_READINGS
    ),
    ("B33", (1, 0, 0, -1, 0, 0)): (
        "[x3,x2]",
        "[[x2,x1],x3]",
        "[[x3,x1],x2]",
        "[[x2,x1],x2]+[[x3,x1],x3]",
        "[[x3,x2],x2]",
        "[[x3,x2],x3]",
    ),
    ("B33", (1, 0, 0, 1, 0, -1)): (
        "[[x2,x1],x3]",
        "[[x3,x1],x2]",
        "-[[x2,x1],x2]+[[x3,x1],x3]",
        "[[x3,x1],x1]+[[x3,x2],x2]",
        "-[[x2,x1],x1]+[[x3,x2],x3]",
    ),
}

# printed as "[[x_3,x_2],x_3]-+x_2,x_1],x_1]"
GARBLED_READINGS = {
    "minus": "[[x3,x2],x3]-[[x2,x1],x1]",
    "plus": "[[x3,x2],x3]+[[x2,x1],x1]",
}


def combination(alg: FreeNilpotent, text: str) -> LieElement:
    """Evaluate a signed sum of bracket words such as ``"-[x2,x1]+[x3,x1]"``."""
    out = alg.zero()
    sign, depth, cur = 1, 0, ""
    for ch in text.replace(" ", "") + "+":
        if ch in "+-" and depth == 0:
            if cur:
                out = out + alg.word(cur) * sign
            sign, cur = (1 if ch == "+" else -1), ""
            continue
        depth += (ch == "[") - (ch == "]")
        cur += ch
    return out
