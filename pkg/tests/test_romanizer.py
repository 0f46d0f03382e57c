import dataclasses

import pytest

from errors import ConfigurationError, ReversibilityError, TableParseError, TableValidationError, UnmappedCharacterError
from models import PassthroughPolicy, RomanizationMode
from utils.metrics import Metrics
from utils.romanizer import Romanizer

LOSSY = RomanizationMode.LOSSY
PRESERVING = RomanizationMode.PRESERVING


def write_table(tmp_path, text, name='t.tsv'):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return str(path)


class TestLoadTable:

    def test_two_entries_with_literal_empty_target(self, tmp_path):
        table = Romanizer.load_table(write_table(tmp_path, "Ч\tČ\tCH\nь\t'\t\\0\n"))
        assert len(table) == 2
        soft = table.lookup('ь')
        assert table.target(soft, LOSSY) == ''
        assert table.target(soft, PRESERVING) == "'"
        assert table.target(table.lookup('Ч'), LOSSY) == 'CH'

    def test_empty_lossy_field_is_derived(self, tmp_path):
        table = Romanizer.load_table(write_table(tmp_path, 'ч\tč\t\n'))
        assert table.target(table.lookup('ч'), LOSSY) == 'c'

    def test_empty_file_is_identity(self, tmp_path):
        table = Romanizer.load_table(write_table(tmp_path, ''))
        assert len(table) == 0
        assert Romanizer.romanize('Что там', table, LOSSY) == 'Что там'

    def test_duplicate_source_rejected(self, tmp_path):
        with pytest.raises(TableValidationError, match='lines 1 and 3'):
            Romanizer.load_table(write_table(tmp_path, 'Ч\tČ\tCH\nа\ta\t\nЧ\tC\t\n'))

    def test_malformed_line_reports_line_number(self, tmp_path):
        with pytest.raises(TableParseError) as info:
            Romanizer.load_table(write_table(tmp_path, '# header\nа\ta\t\nб\n'))
        assert info.value.line_no == 3

    def test_unknown_flag(self, tmp_path):
        with pytest.raises(TableParseError):
            Romanizer.load_table(write_table(tmp_path, 'а\ta\t\tBOLD\n'))

    def test_directives(self, tmp_path):
        text = '#!name=strict\n#!passthrough=error_on_unmapped\nа\ta\t\n'
        table = Romanizer.load_table(write_table(tmp_path, text))
        assert table.name == 'strict'
        assert table.passthrough_policy is PassthroughPolicy.ERROR_ON_UNMAPPED

    def test_nfc_normalized_sources(self, tmp_path):
        decomposed = 'e\u0301'
        table = Romanizer.load_table(write_table(tmp_path, f'{decomposed}\tx\t\n'))
        assert Romanizer.romanize('\u00e9', table, PRESERVING) == 'x'

    def test_whitespace_source_entry(self, tmp_path):
        table = Romanizer.load_table(write_table(tmp_path, '\u3000\t \t \n\u00a0\t \t \n   \n'))
        assert len(table) == 2
        assert Romanizer.romanize('a\u3000b\u00a0c', table, LOSSY) == 'a b c'

    def test_resolve_shipped_table(self, tables_dir):
        table = Romanizer.resolve_table('cyrillic', tables_dir)
        assert table.name == 'cyrillic'
        assert 'toy' in Romanizer.available_tables(tables_dir)

    def test_resolve_unknown_table(self, tables_dir):
        with pytest.raises(TableValidationError):
            Romanizer.resolve_table('klingon', tables_dir)

    def test_shipped_only_ignores_local_files(self, tmp_path, tables_dir, monkeypatch):
        write_table(tmp_path, 'а\ta\t\n', name='local.tsv')
        monkeypatch.chdir(tmp_path)
        assert len(Romanizer.resolve_table('local.tsv', tables_dir)) == 1
        with pytest.raises(TableValidationError):
            Romanizer.resolve_table('local.tsv', tables_dir, shipped_only=True)

    @pytest.mark.parametrize('name', ['../tables/cyrillic', 'tables/cyrillic', '', '.hidden'])
    def test_shipped_only_rejects_paths(self, tables_dir, name):
        with pytest.raises(TableValidationError):
            Romanizer.resolve_table(name, tables_dir, shipped_only=True)


class TestRomanize:

    def test_mandarin_worked_example(self, mandarin):
        text = '她到塔皓湖去了'
        assert Romanizer.romanize(text, mandarin, LOSSY) == 'ta dao ta hao hu qu le'
        assert Romanizer.romanize(text, mandarin, PRESERVING) == 'tā dào tǎ hào hú qù le'

    def test_cyrillic_worked_example(self, cyrillic):
        text = 'Что там дальше?'
        assert Romanizer.romanize(text, cyrillic, PRESERVING) == "Čto tam dal'še?"
        assert Romanizer.romanize(text, cyrillic, LOSSY) == 'CHto tam dalshe?'

    def test_latin_passthrough(self, cyrillic):
        for mode in RomanizationMode:
            assert Romanizer.romanize('hello world', cyrillic, mode) == 'hello world'

    def test_longest_match(self, make_table):
        table = make_table([('а', 'a'), ('ая', 'aya'), ('я', 'ya')])
        assert Romanizer.romanize('ая', table, PRESERVING) == 'aya'
        assert Romanizer.romanize('аая', table, PRESERVING) == 'aaya'

    def test_mode_consistency_for_derived_tables(self, mandarin):
        assert mandarin.has_derived_lossy_targets()
        for text in ['她到塔皓湖去了', '我是中国人', 'abc 你好']:
            preserving = Romanizer.romanize(text, mandarin, PRESERVING)
            assert Romanizer.romanize(text, mandarin, LOSSY) == Romanizer.strip_diacritics(preserving)

    def test_error_on_unmapped(self, make_table):
        table = make_table([('а', 'a')], passthrough_policy=PassthroughPolicy.ERROR_ON_UNMAPPED)
        assert Romanizer.romanize('а b', table, LOSSY) == 'a b'
        with pytest.raises(UnmappedCharacterError) as info:
            Romanizer.romanize('аЖаЖЯ', table, LOSSY)
        assert info.value.codepoints == ['Ж', 'Я']
        assert 'U+0416' in str(info.value)

    def test_word_space(self, amharic):
        text = 'ሰላም፡ሁሉ'
        assert Romanizer.romanize(text, amharic, PRESERVING) == 'sälamə hulu'
        assert Romanizer.romanize(text, amharic, LOSSY) == 'selam hulu'
        dropping = dataclasses.replace(amharic, lossy_drops_word_space=True)
        assert Romanizer.romanize(text, dropping, LOSSY) == 'selamhulu'
        assert Romanizer.romanize(text, dropping, PRESERVING) == 'sälamə hulu'

    def test_unknown_mode(self, cyrillic):
        with pytest.raises(ConfigurationError):
            Romanizer.romanize('a', cyrillic, 'phonetic')

    def test_alignment_concatenates(self, mandarin):
        pieces = Romanizer.aligned('她到x', mandarin, PRESERVING)
        assert pieces == [('tā', '她'), (' ', ''), ('dào', '到'), (' ', ''), ('x', 'x')]


class TestStripDiacritics:

    @pytest.mark.parametrize('text, expected', [
        ('tā dào tǎ', 'ta dao ta'),
        ('abc123', 'abc123'),
        ('Čto', 'Cto'),
    ])
    def test_examples(self, text, expected):
        assert Romanizer.strip_diacritics(text) == expected


class TestReversibility:

    def test_prefix_code_is_decodable(self, make_table):
        report = Romanizer.is_reversible(make_table([('x', 'a'), ('y', 'ab')]), PRESERVING)
        assert report.uniquely_decodable
        assert report.reversible

    def test_ambiguous_code_has_witness(self, make_table):
        report = Romanizer.is_reversible(make_table([('x', 'a'), ('y', 'ab'), ('z', 'ba')]), PRESERVING)
        assert not report.uniquely_decodable
        assert report.witness == 'aba'
        assert not report.reversible

    def test_deletion_is_not_reversible(self, cyrillic):
        report = Romanizer.is_reversible(cyrillic, LOSSY)
        assert report.has_empty_target
        assert not report.reversible

    def test_cyrillic_preserving_is_reversible(self, cyrillic):
        assert Romanizer.is_reversible(cyrillic, PRESERVING).reversible

    def test_duplicate_targets(self, hebrew):
        report = Romanizer.is_reversible(hebrew, PRESERVING)
        assert not report.injective
        assert report.witness in {'k', 'm', 'n', 'p', 'ṣ'}

    def test_toy_modes(self, toy):
        assert Romanizer.is_reversible(toy, PRESERVING).reversible
        lossy = Romanizer.is_reversible(toy, LOSSY)
        assert not lossy.injective
        assert not lossy.uniquely_decodable


class TestRuleBasedDeromanization:

    def test_cyrillic_example(self, cyrillic):
        assert Romanizer.deromanize_rule_based("Čto tam dal'še?", cyrillic, PRESERVING) == 'Что там дальше?'

    def test_empty(self, cyrillic):
        assert Romanizer.deromanize_rule_based('', cyrillic, PRESERVING) == ''

    def test_email_span_is_transliterated(self, cyrillic):
        out = Romanizer.deromanize_rule_based('email me at x@y.com — Čto?', cyrillic, PRESERVING)
        assert out.endswith('— Что?')
        assert 'x@ы.цом' in out

    def test_non_reversible_requires_best_effort(self, mandarin):
        with pytest.raises(ReversibilityError) as info:
            Romanizer.deromanize_rule_based('tā', mandarin, PRESERVING)
        assert info.value.witness in {'hào', 'tā'}

    def test_best_effort_drops_syllable_spaces(self, mandarin):
        assert Romanizer.deromanize_rule_based('tā dào tǎ', mandarin, PRESERVING, best_effort=True) == '她到塔'

    def test_round_trip(self, toy, toy_corpus_factory):
        for line in toy_corpus_factory(200, seed=3, mixed_rate=0.0):
            romanized = Romanizer.romanize(line, toy, PRESERVING)
            assert Romanizer.deromanize_rule_based(romanized, toy, PRESERVING) == line


class TestTypeCounts:

    def test_romanization_never_adds_types(self, toy, toy_corpus_factory):
        corpus = toy_corpus_factory(500, seed=4, mixed_rate=0.0)
        original = Metrics.type_count(corpus)
        preserving = Metrics.type_count([Romanizer.romanize(s, toy, PRESERVING) for s in corpus])
        lossy = Metrics.type_count([Romanizer.romanize(s, toy, LOSSY) for s in corpus])
        assert lossy < preserving <= original
