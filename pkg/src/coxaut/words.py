"""Word arithmetic via elementary m-operations.

A word is a tuple of generator ids.  The only rewriting moves are:
replace an alternating segment s t s t ... of length m(s, t) by the
segment t s t s ... of the same length (an m-operation), and delete an
adjacent equal pair s s.  A word is reduced exactly when no word in its
m-operation closure contains an adjacent equal pair, and two reduced
words represent the same element exactly when they lie in the same
closure.  The canonical form of an element is the lexicographically
least word in the m-class of any reduced word for it.
"""

from __future__ import annotations

from collections import deque

from .system import CoxeterSystem

Word = tuple[int, ...]

# Closure sizes grow with the rank and word length; this cap turns a
# runaway enumeration into a clean failure instead of an OOM kill.
DEFAULT_MAX_STATES = 10**6


class LimitExceeded(RuntimeError):
    """An enumeration guard tripped; the result is indeterminate, not wrong."""


def apply_m_operation(system: CoxeterSystem, word: Word, position: int, s: int, t: int) -> Word:
    """Replace the alternating s,t segment of length m(s,t) at position by the t,s one."""
    if s == t:
        raise ValueError("m-operation needs two distinct generators")
    m = system.order(s, t)
    if m == float("inf"):
        raise ValueError(f"m({system.name_of(s)},{system.name_of(t)}) is infinite; no m-operation exists")
    if position < 0 or position + m > len(word):
        raise ValueError("m-operation segment does not fit in the word")
    expected = tuple((s, t)[i % 2] for i in range(m))
    if word[position : position + m] != expected:
        raise ValueError("word does not match the alternating segment at that position")
    replacement = tuple((t, s)[i % 2] for i in range(m))
    return word[:position] + replacement + word[position + m :]


def _m_moves(system: CoxeterSystem, word: Word):
    """All words one m-operation away, each with the (position, s, t) that produced it."""
    for s, t, m in system.finite_pairs():
        for u, v in ((s, t), (t, s)):
            pattern = tuple((u, v)[i % 2] for i in range(m))
            replacement = tuple((v, u)[i % 2] for i in range(m))
            for pos in range(len(word) - m + 1):
                if word[pos : pos + m] == pattern:
                    yield word[:pos] + replacement + word[pos + m :], (pos, u, v)


def m_closure(system: CoxeterSystem, word: Word, max_states: int = DEFAULT_MAX_STATES) -> set[Word]:
    """All words reachable from `word` by m-operations (length is preserved)."""
    word = tuple(word)
    seen = {word}
    queue = deque([word])
    while queue:
        current = queue.popleft()
        for nxt, _ in _m_moves(system, current):
            if nxt not in seen:
                if len(seen) >= max_states:
                    raise LimitExceeded(f"m-operation closure exceeded {max_states} words")
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _adjacent_repeat(word: Word) -> int | None:
    for i in range(len(word) - 1):
        if word[i] == word[i + 1]:
            return i
    return None


def is_reduced(system: CoxeterSystem, word: Word, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """True when no word in the m-closure contains an adjacent equal pair."""
    word = tuple(word)
    if _adjacent_repeat(word) is not None:
        return False
    seen = {word}
    queue = deque([word])
    while queue:
        current = queue.popleft()
        for nxt, _ in _m_moves(system, current):
            if nxt not in seen:
                if _adjacent_repeat(nxt) is not None:
                    return False
                if len(seen) >= max_states:
                    raise LimitExceeded(f"m-operation closure exceeded {max_states} words")
                seen.add(nxt)
                queue.append(nxt)
    return True


def m_class(system: CoxeterSystem, word: Word, max_states: int = DEFAULT_MAX_STATES) -> set[Word]:
    """The m-closure of a reduced word: all reduced words for its element."""
    word = tuple(word)
    closure = m_closure(system, word, max_states=max_states)
    if any(_adjacent_repeat(w) is not None for w in closure):
        raise ValueError("m_class requires a reduced word")
    return closure


def reduce_word(system: CoxeterSystem, word: Word, max_states: int = DEFAULT_MAX_STATES) -> Word:
    """Canonical form: lexicographically least word in the m-class.

    Repeatedly enumerates the closure of the current word; if any member has
    an adjacent equal pair, deletes that pair and starts over with the
    shorter word.  Otherwise the closure is the m-class and its minimum is
    the canonical form.  Results are memoized on the system, including every
    intermediate word inspected along the way.
    """
    word = tuple(word)
    cache = system._reduce_cache
    if word in cache:
        return cache[word]
    chain = [word]
    current = word
    while True:
        closure = m_closure(system, current, max_states=max_states)
        cancellable = None
        for w in sorted(closure):
            i = _adjacent_repeat(w)
            if i is not None:
                cancellable = w[:i] + w[i + 2 :]
                break
        if cancellable is None:
            canonical = min(closure)
            for w in closure:
                cache.setdefault(w, canonical)
            for w in chain:
                cache.setdefault(w, canonical)
            return canonical
        if cancellable in cache:
            canonical = cache[cancellable]
            for w in chain:
                cache.setdefault(w, canonical)
            return canonical
        chain.append(cancellable)
        current = cancellable


def words_equal(system: CoxeterSystem, a: Word, b: Word, max_states: int = DEFAULT_MAX_STATES) -> bool:
    return reduce_word(system, a, max_states=max_states) == reduce_word(system, b, max_states=max_states)


def word_length(system: CoxeterSystem, word: Word, max_states: int = DEFAULT_MAX_STATES) -> int:
    return len(reduce_word(system, word, max_states=max_states))


def multiply(system: CoxeterSystem, a: Word, b: Word, max_states: int = DEFAULT_MAX_STATES) -> Word:
    """Canonical form of the concatenation."""
    return reduce_word(system, tuple(a) + tuple(b), max_states=max_states)


def inverse_word(word: Word) -> Word:
    """Generators are involutions, so the inverse is the reversal."""
    return tuple(reversed(word))


def parse_word(system: CoxeterSystem, text: str) -> Word:
    """Whitespace-separated generator names; the single token 'e' is the empty word.

    If a generator is literally named 'e' the generator wins and there is no
    spelling for the empty word; pass an empty string instead.
    """
    tokens = text.split()
    if not tokens:
        return ()
    if tokens == ["e"] and "e" not in system.names:
        return ()
    return tuple(system.index_of(tok) for tok in tokens)


def format_word(system: CoxeterSystem, word: Word) -> str:
    """Inverse of parse_word; the empty word prints as 'e'."""
    if not word:
        return "e"
    return " ".join(system.name_of(x) for x in word)
