"""Tiny helpers for the ``name:arg`` / ``product(a,b)`` spec grammars."""

from .errors import SpecError


def split_call(text: str, name: str) -> list[str] | None:
    """Return the top-level comma separated arguments of ``name(...)``.

    Returns None when ``text`` is not a call of ``name``.
    """
    text = text.strip()
    if not (text.startswith(name + "(") and text.endswith(")")):
        return None
    inner = text[len(name) + 1:-1]
    args, depth, start = [], 0, 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecError(f"unbalanced parentheses in {text!r}")
        elif ch == "," and depth == 0:
            args.append(inner[start:i].strip())
            start = i + 1
    if depth != 0:
        raise SpecError(f"unbalanced parentheses in {text!r}")
    args.append(inner[start:].strip())
    if any(not a for a in args):
        raise SpecError(f"empty argument in {text!r}")
    return args


def parse_int(text: str, what: str, minimum: int = 0) -> int:
    try:
        value = int(text)
    except ValueError:
        raise SpecError(f"{what} must be an integer, got {text!r}") from None
    if value < minimum:
        raise SpecError(f"{what} must be >= {minimum}, got {value}")
    return value


def parse_index_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [parse_int(t, "element index") for t in text.split(",")]
