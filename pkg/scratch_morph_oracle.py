"""Dev scratch: exhaustive MDL oracle vs greedy segmenter on toy lexicons."""
import itertools
import math
import time

from sensepipe.corpus import Vocabulary
from sensepipe.morph import MorphConfig, mdl_cost, train_segmenter

LN2 = math.log(2.0)


def all_segmentations(word):
    n = len(word)
    out = []
    for mask in range(2 ** (n - 1)):
        parts = []
        start = 0
        for i in range(1, n):
            if mask & (1 << (i - 1)):
                parts.append(word[start:i])
                start = i
        parts.append(word[start:])
        out.append(tuple(parts))
    return out


def exhaustive_best(vocab: dict[str, int]):
    alphabet = set()
    for w in vocab:
        alphabet.update(w)
    A = len(alphabet)
    words = list(vocab)
    seg_lists = [all_segmentations(w) for w in words]
    total_configs = 1
    for s in seg_lists:
        total_configs *= len(s)
    print(f"exhaustive search over {total_configs} joint configs, alphabet={A}")

    ln_alpha = math.log(A + 1)
    lncache = {}

    def ln(n):
        v = lncache.get(n)
        if v is None:
            v = math.log(n)
            lncache[n] = v
        return v

    def gamma(c):
        return (2 * int(math.log2(c)) + 1) * LN2

    best_cost = math.inf
    best_cfg = None
    counts: dict[str, int] = {}
    t0 = time.time()

    def cost():
        N = sum(counts.values())
        codebook = sum(len(m) * ln_alpha + gamma(c) for m, c in counts.items())
        corpus = N * ln(N) - sum(c * ln(c) for c in counts.values())
        return codebook + corpus

    def dfs(idx, cfg):
        nonlocal best_cost, best_cfg
        if idx == len(words):
            c = cost()
            if c < best_cost - 1e-12:
                best_cost = c
                best_cfg = tuple(cfg)
            return
        f = vocab[words[idx]]
        for seg in seg_lists[idx]:
            for m in seg:
                counts[m] = counts.get(m, 0) + f
            cfg.append(seg)
            dfs(idx + 1, cfg)
            cfg.pop()
            for m in seg:
                nc = counts[m] - f
                if nc:
                    counts[m] = nc
                else:
                    del counts[m]

    dfs(0, [])
    print(f"  done in {time.time()-t0:.1f}s best_cost={best_cost:.4f}")
    return dict(zip(words, best_cfg)), best_cost


def run(vocab):
    print("=" * 60)
    print("vocab:", vocab)
    best_cfg, best_cost = exhaustive_best(vocab)
    for w, seg in best_cfg.items():
        print(f"  oracle {w} -> {seg}")
    model = train_segmenter(Vocabulary(entries=dict(vocab), total_count=sum(vocab.values())),
                            MorphConfig(convergence_epsilon=1e-9, max_passes=50, rng_seed=7))
    print(f"  greedy cost={model.model_cost:.4f} lexicon={model.morph_lexicon}")
    for w in vocab:
        print(f"  greedy {w} -> {model.segment(w).morphemes}")
    print(f"  history strictly decreasing: "
          f"{all(b < a for a, b in zip(model.cost_history, model.cost_history[1:]))}")


if __name__ == "__main__":
    run({"abc": 5})
    run({"walk": 10, "walked": 10})
    run({"walk": 10, "walked": 10, "walking": 10, "talk": 10, "talked": 10})
