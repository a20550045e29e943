"""Porter's suffix-stripping stemmer, following the original 1980 rule list.

The implementation sticks to the rules as published (step 2 maps ``abli``
to ``able``, there is no ``logi`` rule, and short words are not exempted),
rather than the later adjustments found in some ports. Input is expected
to be a lowercase word; anything else passes through the rules unchanged
with non-vowel characters treated as consonants.
"""

from __future__ import annotations

_VOWELS = frozenset("aeiou")


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        # y is a vowel when preceded by a consonant
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of vowel-to-consonant transitions: the m of [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        if _is_consonant(stem, i):
            if prev_vowel:
                m += 1
            prev_vowel = False
        else:
            prev_vowel = True
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_consonant(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    """consonant-vowel-consonant ending where the final consonant is not w, x or y."""
    if len(word) < 3:
        return False
    n = len(word)
    return (
        _is_consonant(word, n - 3)
        and not _is_consonant(word, n - 2)
        and _is_consonant(word, n - 1)
        and word[-1] not in "wxy"
    )


def _apply_longest(word: str, rules) -> str:
    """Apply the single rule whose suffix is the longest match.

    Once the longest matching suffix is found its condition decides whether
    anything happens; shorter suffixes are never considered, which is what
    makes e.g. 'rational' survive the 'ational' rule unchanged.
    """
    for suffix, replacement, condition in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if condition(stem):
                return stem + replacement
            return word
    return word


def _m_gt_0(stem: str) -> bool:
    return _measure(stem) > 0


def _m_gt_1(stem: str) -> bool:
    return _measure(stem) > 1


def _always(stem: str) -> bool:
    return True


def _sort_rules(rules):
    return tuple(sorted(rules, key=lambda r: -len(r[0])))


_STEP1A = _sort_rules(
    [
        ("sses", "ss", _always),
        ("ies", "i", _always),
        ("ss", "ss", _always),
        ("s", "", _always),
    ]
)

_STEP2 = _sort_rules(
    [
        ("ational", "ate", _m_gt_0),
        ("tional", "tion", _m_gt_0),
        ("enci", "ence", _m_gt_0),
        ("anci", "ance", _m_gt_0),
        ("izer", "ize", _m_gt_0),
        ("abli", "able", _m_gt_0),
        ("alli", "al", _m_gt_0),
        ("entli", "ent", _m_gt_0),
        ("eli", "e", _m_gt_0),
        ("ousli", "ous", _m_gt_0),
        ("ization", "ize", _m_gt_0),
        ("ation", "ate", _m_gt_0),
        ("ator", "ate", _m_gt_0),
        ("alism", "al", _m_gt_0),
        ("iveness", "ive", _m_gt_0),
        ("fulness", "ful", _m_gt_0),
        ("ousness", "ous", _m_gt_0),
        ("aliti", "al", _m_gt_0),
        ("iviti", "ive", _m_gt_0),
        ("biliti", "ble", _m_gt_0),
    ]
)

_STEP3 = _sort_rules(
    [
        ("icate", "ic", _m_gt_0),
        ("ative", "", _m_gt_0),
        ("alize", "al", _m_gt_0),
        ("iciti", "ic", _m_gt_0),
        ("ical", "ic", _m_gt_0),
        ("ful", "", _m_gt_0),
        ("ness", "", _m_gt_0),
    ]
)


def _ion_condition(stem: str) -> bool:
    return _m_gt_1(stem) and stem[-1:] in ("s", "t")


_STEP4 = _sort_rules(
    [
        ("al", "", _m_gt_1),
        ("ance", "", _m_gt_1),
        ("ence", "", _m_gt_1),
        ("er", "", _m_gt_1),
        ("ic", "", _m_gt_1),
        ("able", "", _m_gt_1),
        ("ible", "", _m_gt_1),
        ("ant", "", _m_gt_1),
        ("ement", "", _m_gt_1),
        ("ment", "", _m_gt_1),
        ("ent", "", _m_gt_1),
        ("ion", "", _ion_condition),
        ("ou", "", _m_gt_1),
        ("ism", "", _m_gt_1),
        ("ate", "", _m_gt_1),
        ("iti", "", _m_gt_1),
        ("ous", "", _m_gt_1),
        ("ive", "", _m_gt_1),
        ("ize", "", _m_gt_1),
    ]
)


def _step1a(word: str) -> str:
    return _apply_longest(word, _STEP1A)


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        if _m_gt_0(word[:-3]):
            return word[:-1]
        return word
    if word.endswith("ed"):
        stem = word[:-2]
        if not _has_vowel(stem):
            return word
    elif word.endswith("ing"):
        stem = word[:-3]
        if not _has_vowel(stem):
            return word
    else:
        return word
    # ed/ing was removed: tidy up the exposed stem
    if stem.endswith(("at", "bl", "iz")):
        return stem + "e"
    if _ends_double_consonant(stem) and stem[-1] not in "lsz":
        return stem[:-1]
    if _measure(stem) == 1 and _ends_cvc(stem):
        return stem + "e"
    return stem


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


def _step2(word: str) -> str:
    return _apply_longest(word, _STEP2)


def _step3(word: str) -> str:
    return _apply_longest(word, _STEP3)


def _step4(word: str) -> str:
    return _apply_longest(word, _STEP4)


def _step5a(word: str) -> str:
    if word.endswith("e"):
        stem = word[:-1]
        m = _measure(stem)
        if m > 1:
            return stem
        if m == 1 and not _ends_cvc(stem):
            return stem
    return word


def _step5b(word: str) -> str:
    if _m_gt_1(word) and _ends_double_consonant(word) and word.endswith("l"):
        return word[:-1]
    return word


def stem(word: str) -> str:
    """Reduce an English word to its stem."""
    for step in (_step1a, _step1b, _step1c, _step2, _step3, _step4, _step5a, _step5b):
        word = step(word)
    return word
