import numpy as np
import pytest

from conftest import make_russian_corpus, make_toy_corpus
from errors import (
    AlignmentError,
    ConfigurationError,
    EncodingFormatError,
    InsufficientDataError,
    SentinelCollisionError,
)
from models import CharEncodingConfig, DeromanizerConfig, RomanizationMode, TrainingPair
from utils.char_lm import CharNgramLM
from utils.deromanizer import Deromanizer, DeromanizerModel
from utils.romanizer import Romanizer

LOSSY = RomanizationMode.LOSSY
PRESERVING = RomanizationMode.PRESERVING


@pytest.fixture(scope='module')
def toy_train(toy_corpus):
    return toy_corpus


@pytest.fixture(scope='module')
def toy_preserving_model(toy, toy_train):
    return Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(toy_train, toy, PRESERVING))


@pytest.fixture(scope='module')
def toy_lossy_model(toy, toy_train):
    return Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(toy_train, toy, LOSSY))


@pytest.fixture(scope='module')
def russian_model(cyrillic):
    pairs = Deromanizer.make_training_pairs(make_russian_corpus(), cyrillic, LOSSY)
    return Deromanizer.train_deromanizer(pairs)


class TestCharEncoding:

    @pytest.mark.parametrize('text, expected', [
        ("Čto tam dal'še?", "Č t o ⌀ t a m ⌀ d a l ' š e ?"),
        ('Что там дальше?', 'Ч т о ⌀ т а м ⌀ д а л ь ш е ?'),
        ('CHto tam dalshe?', 'C H t o ⌀ t a m ⌀ d a l s h e ?'),
        ('a', 'a'),
        ('', ''),
    ])
    def test_encode(self, text, expected):
        assert Deromanizer.encode_chars(text) == expected

    @pytest.mark.parametrize('encoded, expected', [
        ('Č t o ⌀ t a m', 'Čto tam'),
        ('', ''),
        ('⌀', ' '),
    ])
    def test_decode(self, encoded, expected):
        assert Deromanizer.decode_chars(encoded) == expected

    def test_table_pipeline_reproduces_encoded_lines(self, cyrillic):
        source = 'Что там дальше?'
        lossy = Romanizer.romanize(source, cyrillic, LOSSY)
        assert Deromanizer.encode_chars(lossy).startswith('C H t o ⌀ t a m')

    def test_sentinel_collision(self):
        with pytest.raises(SentinelCollisionError):
            Deromanizer.encode_chars('a⌀b')

    def test_multi_codepoint_token(self):
        with pytest.raises(EncodingFormatError):
            Deromanizer.decode_chars('a bc d')

    def test_custom_sentinel(self):
        cfg = CharEncodingConfig(space_sentinel='_')
        assert Deromanizer.encode_chars('a b', cfg) == 'a _ b'
        assert Deromanizer.decode_chars('a _ b', cfg) == 'a b'

    def test_sentinel_must_not_be_space(self):
        with pytest.raises(SentinelCollisionError):
            CharEncodingConfig(space_sentinel=' ')


class TestTrainingPairs:

    def test_cyrillic_lossy(self, cyrillic):
        [pair] = Deromanizer.make_training_pairs(['Что'], cyrillic, LOSSY)
        assert pair.romanized == 'CHto'
        assert pair.original == 'Что'
        assert pair.alignment == [('CH', 'Ч'), ('t', 'т'), ('o', 'о')]

    def test_empty_sentence(self, cyrillic):
        [pair] = Deromanizer.make_training_pairs([''], cyrillic, LOSSY)
        assert (pair.romanized, pair.original, pair.alignment) == ('', '', [])

    def test_passthrough_is_identity(self, make_table):
        [pair] = Deromanizer.make_training_pairs(['abc'], make_table([]), LOSSY)
        assert pair.alignment == [('a', 'a'), ('b', 'b'), ('c', 'c')]

    def test_deleted_grapheme_joins_previous_piece(self, cyrillic):
        [pair] = Deromanizer.make_training_pairs(['дальше'], cyrillic, LOSSY)
        assert ('l', 'ль') in pair.alignment
        pair.check_alignment()

    def test_deleted_grapheme_at_start_joins_next_piece(self, cyrillic):
        [pair] = Deromanizer.make_training_pairs(['ьа'], cyrillic, LOSSY)
        assert pair.alignment == [('a', 'ьа')]

    def test_lone_deleted_grapheme(self, cyrillic):
        [pair] = Deromanizer.make_training_pairs(['ь'], cyrillic, LOSSY)
        assert pair.romanized == ''
        assert pair.alignment == [('', 'ь')]


class TestTraining:

    def test_injective_table_gives_point_mass_channel(self, toy):
        corpus = make_toy_corpus(1000, seed=11, mixed_rate=0.0)
        model = Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(corpus, toy, PRESERVING))
        for codeword in model.codewords:
            dist = model.distribution(codeword)
            assert len(dist) == 1
            assert list(dist.values())[0] == pytest.approx(1.0)

    def test_sixty_forty_channel(self, make_table):
        table = make_table([('她', 'ta'), ('他', 'ta')])
        corpus = ['她'] * 6 + ['他'] * 4
        model = Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(corpus, table, PRESERVING))
        alpha = model.config.alpha
        assert model.channel_prob('她', 'ta') == pytest.approx((6 + alpha) / (10 + 2 * alpha))
        assert model.channel_prob('他', 'ta') == pytest.approx((4 + alpha) / (10 + 2 * alpha))
        assert model.channel_prob('她', 'ta') == pytest.approx(0.6, abs=0.01)

    def test_channel_is_normalized(self, toy_lossy_model):
        for codeword in toy_lossy_model.codewords:
            assert sum(toy_lossy_model.distribution(codeword).values()) == pytest.approx(1.0)

    def test_zero_pairs(self):
        with pytest.raises(InsufficientDataError):
            Deromanizer.train_deromanizer([])

    def test_mismatched_pair_is_rejected(self, cyrillic):
        pairs = [TrainingPair('Čto', 'Что'), TrainingPair('CHto', 'Что')]
        with pytest.raises(AlignmentError) as info:
            Deromanizer.train_deromanizer(pairs, table=cyrillic, mode=PRESERVING)
        assert info.value.index == 1
        assert 'sentence 1' in str(info.value)

    def test_unaligned_pair_without_table(self):
        with pytest.raises(AlignmentError):
            Deromanizer.train_deromanizer([TrainingPair('a', 'a')])

    def test_bad_alignment(self):
        pair = TrainingPair('ab', 'ab', alignment=[('a', 'a')])
        with pytest.raises(AlignmentError):
            Deromanizer.train_deromanizer([pair])

    def test_unaligned_pairs_are_realigned(self, cyrillic):
        model = Deromanizer.train_deromanizer([TrainingPair('Čto', 'Что')], table=cyrillic, mode='preserving')
        assert model.channel_prob('Ч', 'Č') == pytest.approx(1.0)
        assert model.table_fingerprint == cyrillic.fingerprint(PRESERVING)

    def test_deterministic(self, toy, toy_corpus_factory):
        corpus = toy_corpus_factory(200, seed=5)
        first = Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(corpus, toy, LOSSY))
        second = Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(corpus, toy, LOSSY))
        assert first.to_dict() == second.to_dict()

    @pytest.mark.parametrize('kwargs', [{'k': 0}, {'alpha': 0}, {'beam': 0}, {'max_length': 0}])
    def test_invalid_config(self, kwargs):
        with pytest.raises(ConfigurationError):
            DeromanizerConfig(**kwargs)


class TestDecoding:

    def test_russian_lossy(self, russian_model):
        assert Deromanizer.deromanize(russian_model, 'CHto tam dalshe?') == 'Что там дальше?'

    def test_url_is_left_alone(self, russian_model):
        assert Deromanizer.deromanize(russian_model, 'visit http://x.y then CHto') == 'visit http://x.y then Что'

    def test_empty(self, russian_model):
        assert Deromanizer.deromanize(russian_model, '') == ''

    def test_unknown_characters_pass_through(self, russian_model):
        assert Deromanizer.deromanize(russian_model, '§') == '§'

    def test_chunks_cover_the_line(self):
        text = 'aaa bbb ccc dddddddd e'
        chunks = Deromanizer._chunks(text, 5)
        assert ''.join(chunks) == text
        assert all(len(chunk) <= 5 for chunk in chunks)

    def test_long_lines_are_chunked(self, toy):
        corpus = make_toy_corpus(300, seed=13, mixed_rate=0.0)
        model = Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(corpus, toy, PRESERVING))
        line = ' '.join(make_toy_corpus(30, seed=21, mixed_rate=0.0))
        romanized = Romanizer.romanize(line, toy, PRESERVING)
        short = DeromanizerModel(DeromanizerConfig(max_length=40), model.channel_counts, model.lm)
        assert Deromanizer.deromanize(short, romanized) == line

    def test_repeated_decoding_keeps_lm_cache_bounded(self, toy, toy_preserving_model):
        bounded = DeromanizerModel(toy_preserving_model.config, toy_preserving_model.channel_counts,
                                   CharNgramLM.from_dict(toy_preserving_model.lm.to_dict(), cache_size=64))
        for line in make_toy_corpus(5, seed=31, mixed_rate=0.0):
            romanized = Romanizer.romanize(line, toy, PRESERVING)
            assert Deromanizer.deromanize(bounded, romanized) == Deromanizer.deromanize(toy_preserving_model, romanized)
            assert bounded.lm.cache_info().currsize <= 64

    def test_save_and_load(self, tmp_path, russian_model):
        path = str(tmp_path / 'model.json')
        russian_model.save(path)
        loaded = DeromanizerModel.load(path)
        assert loaded.to_dict() == russian_model.to_dict()
        assert Deromanizer.deromanize(loaded, 'CHto tam?') == Deromanizer.deromanize(russian_model, 'CHto tam?')


class TestEvaluation:

    def test_exact_recovery(self, toy):
        corpus = make_toy_corpus(300, seed=13, mixed_rate=0.0)
        pairs = Deromanizer.make_training_pairs(corpus, toy, PRESERVING)
        model = Deromanizer.train_deromanizer(pairs)
        report = Deromanizer.evaluate_deromanization(model, pairs)
        assert report.score == pytest.approx(100.0)
        assert report.extra['exact_match'] == len(pairs)

    def test_preserving_beats_lossy(self, toy, toy_preserving_model, toy_lossy_model):
        test = make_toy_corpus(150, seed=7, mixed_rate=0.0)
        preserving = Deromanizer.evaluate_deromanization(
            toy_preserving_model, Deromanizer.make_training_pairs(test, toy, PRESERVING))
        lossy = Deromanizer.evaluate_deromanization(
            toy_lossy_model, Deromanizer.make_training_pairs(test, toy, LOSSY))
        assert preserving.score >= lossy.score + 1.0

    def test_learned_beats_rule_based_on_mixed_script(self, toy, toy_preserving_model):
        test = make_toy_corpus(80, seed=9, mixed_rate=1.0)
        pairs = Deromanizer.make_training_pairs(test, toy, PRESERVING)
        learned = Deromanizer.evaluate_deromanization(toy_preserving_model, pairs)
        rule_based = Deromanizer.evaluate_rule_based(pairs, toy, PRESERVING)
        assert learned.score >= rule_based.score + 1.0

    @pytest.mark.slow
    def test_orderings_hold_on_average_over_seeds(self, toy):
        preserving, lossy, learned, rule_based = [], [], [], []
        for seed in range(5):
            corpus = make_toy_corpus(10_000, seed=seed)
            train, test = corpus[:9_000], corpus[9_000:9_150]
            mixed = make_toy_corpus(80, seed=100 + seed, mixed_rate=1.0)

            preserving_model = Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(train, toy, PRESERVING))
            lossy_model = Deromanizer.train_deromanizer(Deromanizer.make_training_pairs(train, toy, LOSSY))
            preserving.append(Deromanizer.evaluate_deromanization(
                preserving_model, Deromanizer.make_training_pairs(test, toy, PRESERVING)).score)
            lossy.append(Deromanizer.evaluate_deromanization(
                lossy_model, Deromanizer.make_training_pairs(test, toy, LOSSY)).score)

            mixed_pairs = Deromanizer.make_training_pairs(mixed, toy, PRESERVING)
            learned.append(Deromanizer.evaluate_deromanization(preserving_model, mixed_pairs).score)
            rule_based.append(Deromanizer.evaluate_rule_based(mixed_pairs, toy, PRESERVING).score)

        assert np.mean(preserving) >= np.mean(lossy) + 1.0
        assert np.mean(learned) >= np.mean(rule_based) + 1.0

    def test_tuple_pairs(self, russian_model):
        report = Deromanizer.evaluate_deromanization(russian_model, [('CHto tam?', 'Что там?')])
        assert report.per_sentence[0] == pytest.approx(100.0)
        assert report.extra['exact_match'] == 1
