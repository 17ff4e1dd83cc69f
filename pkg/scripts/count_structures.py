"""Count lattices, pointed lattices and residuated lattices by size, with the naive oracle alongside."""
import argparse
import time
from dataclasses import dataclass

from latkit.enumeration import enumerate_lattices, enumerate_pointed, naive_lattice_count
from latkit.residuated import enumerate_rls


@dataclass
class CountConfig:
    max_lattice: int = 8
    max_oracle: int = 7
    max_rl: int = 5


def main(cfg: CountConfig) -> None:
    print(f"{'n':>2} {'lattices':>9} {'oracle':>7} {'pointed':>8} {'RLs':>5} {'CRLs':>5}  time")
    for n in range(1, cfg.max_lattice + 1):
        t = time.perf_counter()
        lat = len(enumerate_lattices(n))
        oracle = str(naive_lattice_count(n)) if n <= cfg.max_oracle else "-"
        pointed = enumerate_pointed(n)
        rl = crl = "-"
        if n <= cfg.max_rl:
            rls = [R for A in pointed for R in enumerate_rls(A, allow_five=True)]
            rl, crl = len(rls), sum(R.commutative for R in rls)
        print(f"{n:>2} {lat:>9} {oracle:>7} {len(pointed):>8} {rl:>5} {crl:>5}  "
              f"{time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-lattice", type=int, default=CountConfig.max_lattice)
    p.add_argument("--max-oracle", type=int, default=CountConfig.max_oracle)
    p.add_argument("--max-rl", type=int, default=CountConfig.max_rl)
    main(CountConfig(**vars(p.parse_args())))
