"""Unsupervised morphological segmentation for agglutinative words.

The segmenter learns a morpheme lexicon by greedy recursive binary splitting
under a two-part minimum-description-length cost, measured in nats:

* codebook cost: for each morpheme type, ``len(morpheme) * ln(A + 1)`` for
  its spelling (A = training alphabet size, the +1 reserving a terminator
  symbol) plus an Elias-gamma style code for its count,
  ``(2 * floor(log2(count)) + 1) * ln(2)``;
* corpus cost: ``-sum(count_m * ln(count_m / N))`` over morpheme tokens,
  where N is the total number of morpheme tokens, scaled by a corpus weight
  (default 0.5).  The weight balances codebook savings against the token
  count inflation every split causes; at weight 1.0 the greedy search
  cannot leave the all-unsplit state on realistic frequency profiles.

Training starts from whole words and re-derives each word's segmentation by
recursive binary splitting, committing a new segmentation only when it makes
the total cost strictly smaller.  Segmentation of new words is a Viterbi
search over the learned lexicon; substrings absent from the lexicon fall back
to a per-character spell-out cost of ``(len + 1) * ln(A + 1)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from sensepipe.corpus import Corpus, Vocabulary

LN2 = math.log(2.0)

_COST_EPS = 1e-9  # floats this close count as equal cost


class MorphError(ValueError):
    """Invalid segmenter input or model file."""


@dataclass
class MorphConfig:
    convergence_epsilon: float = 0.1
    max_passes: int = 10
    rng_seed: int = 0
    corpus_weight: float = 0.5


@dataclass
class Segmentation:
    word: str
    morphemes: list[str]

    def __post_init__(self) -> None:
        if "".join(self.morphemes) != self.word:
            raise MorphError(f"morphemes {self.morphemes!r} do not concatenate to {self.word!r}")


def _gamma_nats(count: int) -> float:
    # Elias-gamma code length for a positive integer, in nats.
    return (2 * int(math.log2(count)) + 1) * LN2


class _CostState:
    """Incrementally maintained two-part MDL cost over a morpheme lexicon."""

    def __init__(self, alphabet_size: int, corpus_weight: float = 0.5):
        self.counts: dict[str, int] = {}
        self.total = 0
        self.ln_alpha = math.log(alphabet_size + 1)
        self.corpus_weight = corpus_weight
        self._sum_clogc = 0.0  # sum of count * ln(count)
        self._codebook = 0.0
        self._ln_cache: dict[int, float] = {}

    def _ln(self, n: int) -> float:
        v = self._ln_cache.get(n)
        if v is None:
            v = math.log(n)
            self._ln_cache[n] = v
        return v

    def add(self, morpheme: str, count: int) -> None:
        old = self.counts.get(morpheme, 0)
        new = old + count
        self.counts[morpheme] = new
        self.total += count
        if old:
            self._sum_clogc -= old * self._ln(old)
            self._codebook -= _gamma_nats(old)
        else:
            self._codebook += len(morpheme) * self.ln_alpha
        self._sum_clogc += new * self._ln(new)
        self._codebook += _gamma_nats(new)

    def remove(self, morpheme: str, count: int) -> None:
        old = self.counts[morpheme]
        new = old - count
        self.total -= count
        self._sum_clogc -= old * self._ln(old)
        self._codebook -= _gamma_nats(old)
        if new:
            self.counts[morpheme] = new
            self._sum_clogc += new * self._ln(new)
            self._codebook += _gamma_nats(new)
        else:
            del self.counts[morpheme]
            self._codebook -= len(morpheme) * self.ln_alpha

    def cost(self) -> float:
        if self.total == 0:
            return 0.0
        corpus = self.total * math.log(self.total) - self._sum_clogc
        return self._codebook + self.corpus_weight * corpus

    def recompute(self) -> float:
        """Rebuild the float accumulators exactly (kills incremental drift)."""
        self._sum_clogc = sum(c * self._ln(c) for c in self.counts.values())
        self._codebook = sum(
            len(m) * self.ln_alpha + _gamma_nats(c) for m, c in self.counts.items()
        )
        return self.cost()


def mdl_cost(
    morpheme_counts: dict[str, int], alphabet_size: int, corpus_weight: float = 0.5
) -> float:
    """Total two-part MDL cost of a morpheme lexicon (reference formula)."""
    state = _CostState(alphabet_size, corpus_weight)
    for m, c in morpheme_counts.items():
        state.add(m, c)
    return state.cost()


@dataclass
class SegmentationModel:
    """A trained morpheme lexicon with its MDL bookkeeping.

    ``cost_history`` records the total cost after initialization and after
    every accepted resegmentation step (strictly decreasing by construction).
    """

    morph_lexicon: dict[str, int]
    total_morph_tokens: int
    model_cost: float
    alphabet_size: int
    config: MorphConfig = field(default_factory=MorphConfig)
    cost_history: list[float] = field(default_factory=list, repr=False)

    def segment(self, word: str) -> Segmentation:
        """Best split of ``word`` into morphemes by Viterbi search.

        Minimizes the corpus-cost contribution ``-ln(count/N)`` per known
        morpheme, with ``(len + 1) * ln(A + 1)`` for unknown substrings.
        Ties prefer fewer morphemes, then the lexicographically smallest
        morpheme sequence.
        """
        if not word:
            raise MorphError("cannot segment an empty word")
        n = len(word)
        ln_total = math.log(self.total_morph_tokens) if self.total_morph_tokens else 0.0
        ln_alpha = math.log(self.alphabet_size + 1)

        def arc_cost(piece: str) -> float:
            count = self.morph_lexicon.get(piece)
            if count is None:
                return (len(piece) + 1) * ln_alpha
            return ln_total - math.log(count)

        # dp[i]: (cost, morpheme_count, morphemes tuple) for word[:i]
        dp: list[tuple[float, int, tuple[str, ...]] | None] = [None] * (n + 1)
        dp[0] = (0.0, 0, ())
        for end in range(1, n + 1):
            best = None
            for start in range(end):
                prev = dp[start]
                if prev is None:
                    continue
                piece = word[start:end]
                cand = (prev[0] + arc_cost(piece), prev[1] + 1, prev[2] + (piece,))
                if best is None:
                    best = cand
                elif cand[0] < best[0] - _COST_EPS:
                    best = cand
                elif abs(cand[0] - best[0]) <= _COST_EPS and cand[1:] < best[1:]:
                    best = cand
            dp[end] = best
        assert dp[n] is not None
        return Segmentation(word=word, morphemes=list(dp[n][2]))

    def stem(self, word: str) -> str:
        """First morpheme of the segmentation (suffixing-language root)."""
        return self.segment(word).morphemes[0]

    def segment_corpus(self, corpus: Corpus) -> Corpus:
        """Replace every corpus token by its morpheme sequence."""
        cache: dict[str, list[str]] = {}
        sentences = []
        token_count = 0
        for sentence in corpus.sentences:
            out: list[str] = []
            for token in sentence:
                morphs = cache.get(token)
                if morphs is None:
                    morphs = self.segment(token).morphemes
                    cache[token] = morphs
                out.extend(morphs)
            sentences.append(out)
            token_count += len(out)
        return Corpus(sentences=sentences, line_count=corpus.line_count, token_count=token_count)

    def save(self, path: str | Path) -> None:
        payload = {
            "version": 1,
            "alphabet_size": self.alphabet_size,
            "morphemes": [
                {"m": m, "count": c} for m, c in sorted(self.morph_lexicon.items())
            ],
            "config": {
                "convergence_epsilon": self.config.convergence_epsilon,
                "max_passes": self.config.max_passes,
                "rng_seed": self.config.rng_seed,
            },
        }
        Path(path).write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=0), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "SegmentationModel":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise MorphError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
        if not isinstance(payload, dict) or payload.get("version") != 1:
            raise MorphError(f"{path}: unsupported segmenter model version")
        try:
            lexicon = {item["m"]: int(item["count"]) for item in payload["morphemes"]}
            alphabet_size = int(payload["alphabet_size"])
            cfg = payload.get("config", {})
            config = MorphConfig(
                convergence_epsilon=float(cfg.get("convergence_epsilon", 0.1)),
                max_passes=int(cfg.get("max_passes", 10)),
                rng_seed=int(cfg.get("rng_seed", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MorphError(f"{path}: malformed segmenter model: {exc}") from exc
        total = sum(lexicon.values())
        cost = mdl_cost(lexicon, alphabet_size)
        return cls(
            morph_lexicon=lexicon,
            total_morph_tokens=total,
            model_cost=cost,
            alphabet_size=alphabet_size,
            config=config,
        )


def _greedy_split(state: _CostState, piece: str, count: int) -> list[str]:
    """Recursively split ``piece``, committing morphemes into ``state``.

    ``piece`` must not be represented in ``state`` on entry.  A binary split
    is taken only when it makes the total cost strictly smaller than keeping
    the piece whole; the scan prefers the leftmost best split point.
    """
    state.add(piece, count)
    best_cost = state.cost()
    state.remove(piece, count)
    best_split = 0
    for i in range(1, len(piece)):
        left, right = piece[:i], piece[i:]
        state.add(left, count)
        state.add(right, count)
        cand = state.cost()
        state.remove(left, count)
        state.remove(right, count)
        if cand < best_cost - _COST_EPS:
            best_cost = cand
            best_split = i
    if best_split == 0:
        state.add(piece, count)
        return [piece]
    out = _greedy_split(state, piece[:best_split], count)
    out += _greedy_split(state, piece[best_split:], count)
    return out


def train_segmenter(vocab: Vocabulary, config: MorphConfig | None = None) -> SegmentationModel:
    """Learn a segmentation model from word-type frequencies.

    Words are visited in descending frequency order (ties shuffled by the
    seed); each visit re-derives the word's greedy recursive segmentation and
    keeps it only if the total MDL cost strictly decreases.  Training stops
    when a full pass improves the cost by less than ``convergence_epsilon``
    or after ``max_passes`` passes.
    """
    import numpy as np

    if config is None:
        config = MorphConfig()
    if not vocab.entries:
        raise MorphError("cannot train a segmenter on an empty vocabulary")
    if config.max_passes < 1:
        raise MorphError(f"max_passes must be >= 1, got {config.max_passes}")

    alphabet = set()
    for word in vocab.entries:
        alphabet.update(word)
    state = _CostState(len(alphabet))

    segmentations: dict[str, list[str]] = {}
    for word, count in vocab.entries.items():
        segmentations[word] = [word]
        state.add(word, count)

    # Frequency order, ties shuffled once by the seed.
    rng = np.random.default_rng(config.rng_seed)
    by_count: dict[int, list[str]] = {}
    for word, count in vocab.entries.items():
        by_count.setdefault(count, []).append(word)
    order: list[str] = []
    for count in sorted(by_count, reverse=True):
        group = sorted(by_count[count])
        rng.shuffle(group)
        order.extend(group)

    history = [state.cost()]
    for _ in range(config.max_passes):
        cost_at_pass_start = state.cost()
        for word in order:
            count = vocab.entries[word]
            before = state.cost()
            old = segmentations[word]
            for m in old:
                state.remove(m, count)
            new = _greedy_split(state, word, count)
            after = state.cost()
            if after < before - _COST_EPS:
                segmentations[word] = new
                history.append(after)
            else:
                for m in new:
                    state.remove(m, count)
                for m in old:
                    state.add(m, count)
        pass_cost = state.recompute()
        if cost_at_pass_start - pass_cost < config.convergence_epsilon:
            break

    return SegmentationModel(
        morph_lexicon=dict(state.counts),
        total_morph_tokens=state.total,
        model_cost=state.cost(),
        alphabet_size=len(alphabet),
        config=config,
        cost_history=history,
    )
