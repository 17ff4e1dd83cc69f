"""Encode small lattices into the cancellative integral CRL and audit the construction."""
import argparse
import time
from dataclasses import dataclass

from latkit.cancellative import (DEFAULT_BOUND, DEFAULT_SAMPLES, DEFAULT_SEED, build_encoding,
                                 property_audit, verify_embedding)
from latkit.enumeration import lattices_up_to


@dataclass
class DemoConfig:
    max_size: int = 5
    bound: int = DEFAULT_BOUND
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED


def main(cfg: DemoConfig) -> int:
    failures = 0
    for L in lattices_up_to(cfg.max_size):
        if L.size < 2:
            continue
        t = time.perf_counter()
        enc = build_encoding(L)
        emb = verify_embedding(enc)
        aud = property_audit(enc, cfg.samples, cfg.bound, cfg.seed)
        ok = emb.ok and aud.ok
        failures += not ok
        d = aud.details
        print(f"size {L.size} dim {enc.dim}: embedding {'ok' if emb.ok else 'BAD'}, "
              f"fragment {d['fragment']}, triples {d['exhaustive_triples']}, "
              f"max k {d['max_k']}, {'ok' if ok else 'FAIL'} ({time.perf_counter() - t:.1f}s)")
    return 1 if failures else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-size", type=int, default=DemoConfig.max_size)
    p.add_argument("--bound", type=int, default=DemoConfig.bound)
    p.add_argument("--samples", type=int, default=DemoConfig.samples)
    p.add_argument("--seed", type=int, default=DemoConfig.seed)
    raise SystemExit(main(DemoConfig(**vars(p.parse_args()))))
