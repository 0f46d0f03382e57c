from collections import deque


class CodeAnalyzer:
    """
    Unique decodability of variable-length codes (Sardinas-Patterson).

    Every dangling suffix is tracked together with the two codeword sequences
    that produced it, so an undecodable code comes back with a concrete
    string that has two parses.
    """

    @staticmethod
    def dangling_suffixes(codewords):
        """The initial suffix set: w such that u + w == v for codewords u != v."""
        words = sorted(set(codewords))
        suffixes = set()
        for u in words:
            for v in words:
                if u != v and v.startswith(u):
                    suffixes.add(v[len(u):])
        return suffixes

    @staticmethod
    def find_ambiguity(codewords):
        """
        Return a string with two distinct parses over `codewords`, or None when
        the code is uniquely decodable. Empty codewords are ignored.
        """
        words = sorted(w for w in set(codewords) if w)
        queue = deque()
        visited = set()

        # state: (suffix, longer, shorter) where concat(longer) == concat(shorter) + suffix
        for u in words:
            for v in words:
                if u != v and v.startswith(u):
                    suffix = v[len(u):]
                    if suffix not in visited:
                        visited.add(suffix)
                        queue.append((suffix, (v,), (u,)))

        while queue:
            suffix, longer, shorter = queue.popleft()
            for c in words:
                if c == suffix:
                    return ''.join(longer)
                if c.startswith(suffix):
                    rest = c[len(suffix):]
                    state = (rest, shorter + (c,), longer)
                elif suffix.startswith(c):
                    rest = suffix[len(c):]
                    state = (rest, longer, shorter + (c,))
                else:
                    continue
                if rest not in visited:
                    visited.add(rest)
                    queue.append(state)
        return None

    @staticmethod
    def is_uniquely_decodable(codewords):
        return CodeAnalyzer.find_ambiguity(codewords) is None

    @staticmethod
    def parses(text, codewords, limit=10):
        """Enumerate up to `limit` segmentations of `text` into codewords."""
        words = sorted(w for w in set(codewords) if w)
        results = []

        def walk(pos, acc):
            if len(results) >= limit:
                return
            if pos == len(text):
                results.append(tuple(acc))
                return
            for w in words:
                if text.startswith(w, pos):
                    acc.append(w)
                    walk(pos + len(w), acc)
                    acc.pop()

        walk(0, [])
        return results
