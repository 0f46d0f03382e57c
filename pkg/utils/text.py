import unicodedata


def nfc(text):
    return unicodedata.normalize('NFC', text)


def strip_diacritics(text):
    """
    Remove combining marks: canonical decomposition, drop marks, recompose.
    `tā dào tǎ` -> `ta dao ta`, `Čto` -> `Cto`.
    """
    decomposed = unicodedata.normalize('NFD', text)
    kept = ''.join(ch for ch in decomposed if not unicodedata.combining(ch))
    return unicodedata.normalize('NFC', kept)


def is_ascii(text):
    return all(ord(ch) < 128 for ch in text)
