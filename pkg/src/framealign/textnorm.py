"""Lemma and text normalization used by the lexicon index and target search."""

from __future__ import annotations

import unicodedata

# The eight harakat (U+064B..U+0652) plus tatweel. Lexicon entries are often
# printed fully vocalized while corpus tokens are not; both must index alike.
_ARABIC_STRIP = dict.fromkeys([0x0640, 0x064B, 0x064C, 0x064D, 0x064E, 0x064F, 0x0650, 0x0651, 0x0652])


def normalize_lemma(lemma: str, language: str) -> str:
    """Normalize a lemma for index lookup: NFC, and for Arabic also strip
    harakat diacritics and tatweel."""
    normalized = unicodedata.normalize("NFC", lemma).strip()
    if language.upper() == "AR":
        normalized = normalized.translate(_ARABIC_STRIP)
    return normalized


def normalize_language(code: str) -> str:
    return code.strip().upper()
