import logging
import os
from collections import Counter

from errors import (
    ReversibilityError,
    TableParseError,
    TableValidationError,
    UnmappedCharacterError,
)
from models import (
    MappingEntry,
    MappingTable,
    PassthroughPolicy,
    RomanizationMode,
    ReversibilityReport,
)
from utils.codes import CodeAnalyzer
from utils.text import is_ascii, nfc, strip_diacritics

logger = logging.getLogger(__name__)


class Romanizer:
    """
    Table-driven romanization in a lossy (ASCII, tones and diacritics dropped)
    and a preserving (diacritics kept) mode, plus the rule-based inverse for
    tables that are provably reversible.

    Matching is greedy longest-match, left to right, on NFC text. Tables are
    context-free.
    """

    EMPTY_TOKEN = '\\0'
    FLAG_WORD_SPACE = 'WSPACE'
    FLAG_SPACED = 'SPACED'
    TABLE_SUFFIX = '.tsv'

    # ------------------------------------------------------------------
    # Tables
    # ------------------------------------------------------------------

    @staticmethod
    def load_table(path):
        """
        Parse a mapping-table TSV file:
        source<TAB>target_preserving<TAB>target_lossy[<TAB>flags]

        An empty lossy field means "derive by stripping diacritics", the token
        `\\0` is a literal empty target, `#` starts a comment and `#!key=value`
        sets a table option.
        """
        options = {'name': os.path.splitext(os.path.basename(path))[0]}
        entries = []
        seen = {}

        with open(path, encoding='utf-8') as handle:
            for line_no, raw in enumerate(handle, start=1):
                line = raw.rstrip('\r\n')
                if line.startswith('#!'):
                    key, sep, value = line[2:].partition('=')
                    if not sep:
                        raise TableParseError(line_no, f'malformed directive {line!r}')
                    options[key.strip()] = value.strip()
                    continue
                if (not line.strip() and '\t' not in line) or line.startswith('#'):
                    continue

                entry = Romanizer._parse_entry(line, line_no)
                if entry.source in seen:
                    raise TableValidationError(
                        f'duplicate source {entry.source!r} on lines {seen[entry.source]} and {line_no}')
                seen[entry.source] = line_no
                entries.append(entry)

        table = MappingTable(
            name=options['name'],
            entries=tuple(entries),
            passthrough_policy=Romanizer._parse_policy(options.get('passthrough')),
            lossy_drops_word_space=Romanizer._parse_bool(options.get('lossy_drops_word_space')),
        )
        logger.info('Loaded table %s with %d entries from %s', table.name, len(table), path)
        return table

    @staticmethod
    def _parse_entry(line, line_no):
        fields = line.split('\t')
        if len(fields) < 2 or len(fields) > 4:
            raise TableParseError(line_no, f'expected 3 or 4 tab-separated fields, got {len(fields)}')

        source = nfc(fields[0])
        if not source:
            raise TableParseError(line_no, 'empty source cluster')

        flags = set()
        if len(fields) == 4:
            flags = {f for f in fields[3].replace(',', ' ').split() if f}
            unknown = flags - {Romanizer.FLAG_WORD_SPACE, Romanizer.FLAG_SPACED}
            if unknown:
                raise TableParseError(line_no, f'unknown flags {sorted(unknown)}')

        preserving = Romanizer._parse_target(fields[1])
        lossy = Romanizer._parse_target(fields[2]) if len(fields) > 2 and fields[2] != '' else None

        return MappingEntry(
            source=source,
            target_preserving=preserving,
            target_lossy=lossy,
            is_word_space=Romanizer.FLAG_WORD_SPACE in flags,
            spaced=Romanizer.FLAG_SPACED in flags,
        )

    @staticmethod
    def _parse_target(value):
        if value == Romanizer.EMPTY_TOKEN:
            return ''
        return nfc(value)

    @staticmethod
    def _parse_policy(value):
        if not value:
            return PassthroughPolicy.COPY_UNMAPPED
        try:
            return PassthroughPolicy(value)
        except ValueError:
            raise TableValidationError(f'unknown passthrough policy {value!r}')

    @staticmethod
    def _parse_bool(value):
        return str(value).strip().lower() in ('1', 'true', 'yes', 'on')

    @staticmethod
    def resolve_table(name_or_path, tables_dir, shipped_only=False):
        """
        Load a table given a file path or the name of a shipped table. With
        `shipped_only` the name must be a plain table name in `tables_dir`.
        """
        if shipped_only:
            if not name_or_path or os.path.basename(name_or_path) != name_or_path \
                    or name_or_path.startswith('.'):
                raise TableValidationError(f'invalid table name {name_or_path!r}')
        elif os.path.isfile(name_or_path):
            return Romanizer.load_table(name_or_path)
        candidate = os.path.join(tables_dir, name_or_path + Romanizer.TABLE_SUFFIX)
        if os.path.isfile(candidate):
            return Romanizer.load_table(candidate)
        raise TableValidationError(f'no mapping table named {name_or_path!r} in {tables_dir}')

    @staticmethod
    def available_tables(tables_dir):
        if not os.path.isdir(tables_dir):
            return []
        return sorted(
            os.path.splitext(f)[0] for f in os.listdir(tables_dir)
            if f.endswith(Romanizer.TABLE_SUFFIX)
        )

    # ------------------------------------------------------------------
    # Romanization
    # ------------------------------------------------------------------

    @staticmethod
    def segments(text, table, mode):
        """
        Longest-match scan of `text`. Returns (source, target, entry) triples;
        entry is None for copied (unmapped) codepoints.
        """
        mode = RomanizationMode.parse(mode)
        text = nfc(text)
        max_len = table.max_source_len
        strict = table.passthrough_policy is PassthroughPolicy.ERROR_ON_UNMAPPED
        result = []
        unmapped = []
        i = 0
        n = len(text)

        while i < n:
            entry = None
            for length in range(min(max_len, n - i), 0, -1):
                entry = table.lookup(text[i:i + length])
                if entry is not None:
                    break
            if entry is None:
                ch = text[i]
                if strict and not is_ascii(ch) and ch not in unmapped:
                    unmapped.append(ch)
                result.append((ch, ch, None))
                i += 1
            else:
                result.append((entry.source, table.target(entry, mode), entry))
                i += len(entry.source)

        if unmapped:
            raise UnmappedCharacterError(unmapped)
        return result

    @staticmethod
    def aligned(text, table, mode):
        """
        (romanized, original) pieces whose concatenations give the romanized
        text and the input. Syllable spacers appear as (' ', '').
        """
        pieces = []
        prev_target = ''
        prev_spaced = False
        for source, target, entry in Romanizer.segments(text, table, mode):
            spaced = entry is not None and entry.spaced
            if ((spaced or prev_spaced) and target and prev_target
                    and prev_target[-1].isalnum() and target[0].isalnum()):
                pieces.append((' ', ''))
            pieces.append((target, source))
            if target:
                prev_target = target
                prev_spaced = spaced
        return pieces

    @staticmethod
    def romanize(text, table, mode):
        return ''.join(target for target, _ in Romanizer.aligned(text, table, mode))

    @staticmethod
    def strip_diacritics(text):
        return strip_diacritics(text)

    # ------------------------------------------------------------------
    # Reversibility and the rule-based inverse
    # ------------------------------------------------------------------

    @staticmethod
    def is_reversible(table, mode):
        mode = RomanizationMode.parse(mode)
        targets = [table.target(e, mode) for e in table.entries]
        nonempty = [t for t in targets if t]
        has_empty = len(nonempty) != len(targets)

        duplicates = sorted(t for t, count in Counter(nonempty).items() if count > 1)
        injective = not duplicates
        ambiguity = CodeAnalyzer.find_ambiguity(nonempty)

        witness = duplicates[0] if duplicates else ambiguity
        return ReversibilityReport(
            injective=injective,
            uniquely_decodable=ambiguity is None,
            has_empty_target=has_empty,
            witness=witness,
        )

    @staticmethod
    def deromanize_rule_based(text, table, mode, best_effort=False):
        """
        Greedy longest-match over the inverted table. Latin text that happens
        to spell codewords (URLs, e-mail addresses) is converted too; with
        best_effort, undecodable spans are copied verbatim.
        """
        mode = RomanizationMode.parse(mode)
        report = Romanizer.is_reversible(table, mode)
        if not report.reversible:
            if not best_effort:
                raise ReversibilityError(
                    f'table {table.name} is not reversible in {mode.value} mode', report.witness)
            logger.debug('Best-effort deromanization with non-reversible table %s', table.name)

        inverse = {}
        for entry in table.entries:
            target = table.target(entry, mode)
            if target and target not in inverse:
                inverse[target] = entry
        max_len = max((len(t) for t in inverse), default=0)

        text = nfc(text)
        tokens = []
        i = 0
        n = len(text)
        while i < n:
            entry = None
            for length in range(min(max_len, n - i), 0, -1):
                entry = inverse.get(text[i:i + length])
                if entry is not None:
                    tokens.append((entry.source, entry))
                    i += length
                    break
            if entry is None:
                tokens.append((text[i], None))
                i += 1

        out = []
        last = len(tokens) - 1
        for idx, (piece, entry) in enumerate(tokens):
            if entry is None and piece == ' ' and 0 < idx < last:
                before, after = tokens[idx - 1][1], tokens[idx + 1][1]
                if before is not None and after is not None and (before.spaced or after.spaced):
                    continue
            out.append(piece)
        return ''.join(out)
