import os

import numpy as np
import pytest
from click.testing import CliRunner

from app import create_app
from config import Config
from models import MappingEntry, MappingTable
from utils.romanizer import Romanizer

TABLES_DIR = Config.TABLES_DIR

VOWELS = set('აეიოუ')
STEMS = ['ბარ', 'გელ', 'დომ', 'ვან', 'ზერ', 'ლიმ', 'მორ', 'ნელ', 'პან', 'რუდ',
         'სალ', 'ბუნ', 'გომ', 'დერ', 'ვილ', 'ზან', 'ლორ', 'მენ', 'ნურ', 'პილ']
SUFFIXES = ['', 'ი', 'ებ', 'ო']
# (variant after a vowel, variant after a consonant); collide in lossy mode
CONTEXT_PAIRS = [('თამ', 'ტამ'), ('კარ', 'ქარ'), ('შემ', 'სჰემ'), ('ოთი', 'ოტი'), ('ეკო', 'ექო')]
# chosen by coin flip, so no context can recover them from lossy text
RANDOM_PAIRS = [('თელ', 'ტელ'), ('კონ', 'ქონ'), ('შარ', 'სჰარ')]
LATIN_PHRASES = ['visit http://example.org', 'mail info@example.com',
                 'see www.wiki.org/page', 'call 555-0199 now']
LATIN_WORDS = ['the', 'river', 'house', 'winter', 'garden', 'letter', 'morning',
               'people', 'little', 'water', 'window', 'between', 'yellow', 'story']


def make_toy_corpus(n, seed=0, mixed_rate=0.05):
    """
    Sentences in the toy script with designed lossy-mode ambiguity: some
    variants are determined by the previous word's last letter, some are
    random. About `mixed_rate` of the lines carry a Latin phrase.
    """
    rng = np.random.default_rng(seed)
    lines = []
    for _ in range(n):
        words = []
        prev_last = None
        for _ in range(int(rng.integers(4, 9))):
            kind = rng.random()
            if kind < 0.5:
                word = STEMS[rng.integers(len(STEMS))] + SUFFIXES[rng.integers(len(SUFFIXES))]
            elif kind < 0.8:
                after_vowel, after_consonant = CONTEXT_PAIRS[rng.integers(len(CONTEXT_PAIRS))]
                prefix = after_vowel if prev_last is None or prev_last in VOWELS else after_consonant
                word = prefix + STEMS[rng.integers(len(STEMS))]
            else:
                pair = RANDOM_PAIRS[rng.integers(len(RANDOM_PAIRS))]
                word = pair[rng.integers(2)] + 'ა'
            words.append(word)
            prev_last = word[-1]
        if rng.random() < mixed_rate:
            words.insert(int(rng.integers(len(words) + 1)), LATIN_PHRASES[rng.integers(len(LATIN_PHRASES))])
        lines.append(' '.join(words))
    return lines


def make_latin_corpus(n, seed=0):
    rng = np.random.default_rng(seed)
    return [' '.join(LATIN_WORDS[i] for i in rng.integers(len(LATIN_WORDS), size=int(rng.integers(4, 9))))
            for _ in range(n)]


RUSSIAN_LINES = [
    'Что там дальше?', 'Что там?', 'Там дальше лес.', 'Дальше что?', 'Мы видим дом.',
    'Кот там.', 'Он читает книгу дальше.', 'Вот стол и дом.', 'Дальше лес и дом.',
    'Там кот читает.', 'Что он видит?', 'Мы идем дальше.',
]
URL_LINES = ['visit http://x.y then Что', 'visit http://x.y then Что там?', 'visit http://x.y then']


def make_russian_corpus(repeats=20, with_urls=True):
    lines = RUSSIAN_LINES * repeats
    if with_urls:
        lines += URL_LINES * (repeats // 2)
    return lines


@pytest.fixture(scope='session')
def tables_dir():
    return TABLES_DIR


@pytest.fixture(scope='session')
def cyrillic():
    return Romanizer.load_table(os.path.join(TABLES_DIR, 'cyrillic.tsv'))


@pytest.fixture(scope='session')
def mandarin():
    return Romanizer.load_table(os.path.join(TABLES_DIR, 'mandarin.tsv'))


@pytest.fixture(scope='session')
def hebrew():
    return Romanizer.load_table(os.path.join(TABLES_DIR, 'hebrew.tsv'))


@pytest.fixture(scope='session')
def amharic():
    return Romanizer.load_table(os.path.join(TABLES_DIR, 'amharic.tsv'))


@pytest.fixture(scope='session')
def toy():
    return Romanizer.load_table(os.path.join(TABLES_DIR, 'toy.tsv'))


@pytest.fixture
def make_table():
    def build(rows, **kwargs):
        entries = tuple(MappingEntry(*row) for row in rows)
        return MappingTable(name=kwargs.pop('name', 'test'), entries=entries, **kwargs)
    return build


@pytest.fixture(scope='session')
def toy_corpus():
    return make_toy_corpus(2000, seed=0)


@pytest.fixture(scope='session')
def toy_corpus_factory():
    return make_toy_corpus


@pytest.fixture(scope='session')
def latin_corpus():
    return make_latin_corpus(1000, seed=1)


@pytest.fixture(scope='session')
def russian_corpus():
    return make_russian_corpus()


@pytest.fixture
def app():
    app = create_app('testing')
    yield app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)
