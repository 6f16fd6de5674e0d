"""Parsing, printing and cyclic algebra of symbolic matrix words."""

import itertools
import logging
import re
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from ..data.models import ORIENTATION, ColoredCycle, Factor, Marker, VarInfo, Word
from .errors import WordParseError

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(\^T|')?$")
NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")
SEPARATOR_RE = re.compile(r"[\s*]+")
SYM_HEADER = "sym:"
EMPTY_PRODUCT = "I"


def _split_header(text: str) -> Tuple[str, Set[str]]:
    """Strip an optional leading `sym: A, C` line."""
    declared: Set[str] = set()
    body_lines = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.lower().startswith(SYM_HEADER):
            names = stripped[len(SYM_HEADER):].replace(",", " ").split()
            for name in names:
                if not NAME_RE.match(name):
                    raise WordParseError(f"Malformed sym declaration: {name!r}")
            declared.update(names)
        else:
            body_lines.append(line)
    return " ".join(body_lines), declared


def parse_word(text: str, sym_names: Optional[Iterable[str]] = None) -> Word:
    """Parse `A B^T C'` style text into a normalized Word."""
    body, declared = _split_header(text or "")
    declared.update(sym_names or ())

    tokens = [t for t in SEPARATOR_RE.split(body.strip()) if t]
    if not tokens:
        raise WordParseError("Empty word")

    names: List[str] = []
    index = {}
    factors = []
    warnings = []
    for token in tokens:
        match = TOKEN_RE.match(token)
        if not match:
            raise WordParseError(f"Malformed factor token: {token!r}")
        name, suffix = match.group(1), match.group(2)
        if name not in index:
            index[name] = len(names)
            names.append(name)
        if name in declared:
            if suffix:
                warnings.append(f"transpose suffix on symmetric variable {name} absorbed")
            marker = Marker.SYM
        else:
            marker = Marker.TRANSPOSE if suffix else Marker.PLAIN
        factors.append(Factor(index[name], marker))

    table = tuple(VarInfo(name, name in declared) for name in names)
    for message in warnings:
        logger.warning(message)
    return normalize(Word(tuple(factors), table, tuple(warnings)))


def build_word(tokens: Sequence[Tuple[str, Marker]], sym_names: Iterable[str] = ()) -> Word:
    """Build a normalized Word from (name, marker) pairs."""
    declared = set(sym_names)
    names: List[str] = []
    factors = []
    for name, marker in tokens:
        if name not in names:
            names.append(name)
        factors.append(Factor(names.index(name), marker))
    table = tuple(VarInfo(name, name in declared) for name in names)
    return normalize(Word(tuple(factors), table))


def normalize(w: Word) -> Word:
    """Propagate Sym markers: a variable that is ever symmetric is symmetric everywhere."""
    sym = [info.symmetric for info in w.vars]
    for f in w.factors:
        if f.marker is Marker.SYM:
            sym[f.var] = True
    table = tuple(VarInfo(info.name, sym[i]) for i, info in enumerate(w.vars))
    factors = tuple(Factor(f.var, Marker.SYM) if sym[f.var] else f for f in w.factors)
    if factors == w.factors and table == w.vars:
        return w
    return Word(factors, table, w.warnings)


def transpose_word(w: Word) -> Word:
    return Word(tuple(f.conjugate() for f in reversed(w.factors)), w.vars, w.warnings)


def cyclic_shift(w: Word, j: int) -> Word:
    """Left rotation: factor j becomes the first factor."""
    k = w.degree
    if k == 0:
        return w
    j %= k
    return Word(w.factors[j:] + w.factors[:j], w.vars, w.warnings)


def concat(w1: Word, w2: Word) -> Word:
    """Product w1·w2, merging variable tables by name."""
    if w1.vars == w2.vars:
        return Word(w1.factors + w2.factors, w1.vars)
    names = [info.name for info in w1.vars]
    sym = [info.symmetric for info in w1.vars]
    remap = {}
    for i, info in enumerate(w2.vars):
        if info.name in names:
            remap[i] = names.index(info.name)
            sym[remap[i]] = sym[remap[i]] or info.symmetric
        else:
            remap[i] = len(names)
            names.append(info.name)
            sym.append(info.symmetric)
    factors = w1.factors + tuple(Factor(remap[f.var], f.marker) for f in w2.factors)
    return normalize(Word(factors, tuple(VarInfo(n, s) for n, s in zip(names, sym))))


def eq_shift(w1: Word, w2: Word) -> Optional[int]:
    """Least j with cyclic_shift(w1, j) equal to w2 factor-wise, comparing by variable name."""
    k = w1.degree
    if k != w2.degree:
        return None
    if k == 0:
        return 0
    keys1 = [w1.key(i) for i in range(k)]
    keys2 = [w2.key(i) for i in range(k)]
    for j in range(k):
        if keys1[j:] + keys1[:j] == keys2:
            return j
    return None


def sub_word(w: Word, start: int, length: int) -> Word:
    """Cyclic slice of `length` factors beginning at `start`."""
    k = w.degree
    factors = tuple(w.factors[(start + i) % k] for i in range(length)) if k else ()
    return Word(factors, w.vars)


def to_colored_cycle(w: Word) -> ColoredCycle:
    return ColoredCycle(w.degree, tuple((ORIENTATION[f.marker], f.var) for f in w.factors))


def bar(color: Tuple[int, int]) -> Tuple[int, int]:
    return -color[0], color[1]


def _token(w: Word, f: Factor) -> str:
    name = w.vars[f.var].name
    return f"{name}^T" if f.marker is Marker.TRANSPOSE else name


def format_factors(w: Word) -> str:
    """Factors only, `I` for the empty product."""
    if w.degree == 0:
        return EMPTY_PRODUCT
    return " ".join(_token(w, f) for f in w.factors)


def sym_names(w: Word) -> List[str]:
    used = {f.var for f in w.factors}
    return [info.name for i, info in enumerate(w.vars) if info.symmetric and i in used]


def format_word(w: Word) -> str:
    """Canonical printer; a `sym:` header line precedes the factors when needed."""
    names = sym_names(w)
    body = format_factors(w)
    if names:
        return f"{SYM_HEADER} {', '.join(names)}\n{body}"
    return body


def canonical_key(w: Word) -> str:
    """Least rotation of the printed tokens; equal for cyclically equivalent words."""
    tokens = [_token(w, f) for f in w.factors]
    best = min((tuple(tokens[j:] + tokens[:j]) for j in range(len(tokens))), default=())
    return f"{','.join(sorted(sym_names(w)))}|{' '.join(best)}"


def enumerate_words(max_degree: int, n_vars: int = 2) -> Iterator[Word]:
    """All normalized words of degree 1..max_degree over n_vars variables.

    Every marker pattern and every choice of symmetric variables is covered;
    words are deduplicated up to cyclic shift.
    """
    if n_vars < 1 or n_vars > 26:
        raise ValueError(f"n_vars must be in 1..26, got {n_vars}")
    names = [chr(ord("A") + i) for i in range(n_vars)]
    seen: Set[str] = set()
    for degree in range(1, max_degree + 1):
        for sym_mask in range(2 ** n_vars):
            declared = {names[i] for i in range(n_vars) if sym_mask >> i & 1}
            choices = []
            for name in names:
                if name in declared:
                    choices.append((name, Marker.SYM))
                else:
                    choices.extend([(name, Marker.PLAIN), (name, Marker.TRANSPOSE)])
            for tokens in itertools.product(choices, repeat=degree):
                w = build_word(tokens, declared)
                key = canonical_key(w)
                if key not in seen:
                    seen.add(key)
                    yield w
    logger.debug(f"Enumerated {len(seen)} words up to degree {max_degree}")
