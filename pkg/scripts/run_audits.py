"""Run every catalog audit and print a table of pass/fail counts."""
import argparse
import time
from dataclasses import dataclass, fields

from latkit.audits import POINTED_CHECKS, RL_CHECKS, drastic_applies
from latkit.enumeration import catalog_audit, pointed_up_to
from latkit.residuated import enumerate_all_rls


@dataclass
class AuditConfig:
    pointed_size: int = 6
    rl_size: int = 4
    show_failures: bool = False


def main(cfg: AuditConfig) -> int:
    pointed = list(pointed_up_to(cfg.pointed_size))
    rls = list(enumerate_all_rls(cfg.rl_size))
    print(f"{len(pointed)} pointed lattices (size <= {cfg.pointed_size}), "
          f"{len(rls)} RLs (size <= {cfg.rl_size})")
    bad = 0
    for name in list(POINTED_CHECKS) + list(RL_CHECKS):
        algs = rls if name in RL_CHECKS else pointed
        if name == "drastic":
            algs = [A for A in algs if drastic_applies(A)]
        t = time.perf_counter()
        res = catalog_audit(algs, [name])[name]
        bad += res.failed
        print(f"{name:24s} {res.passed:5d} pass {res.failed:4d} fail  {time.perf_counter() - t:6.2f}s")
        if cfg.show_failures and res.failures:
            print("  " + res.failures[0].replace("\n", "\n  "))
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for f in fields(AuditConfig):
        if f.type in (bool, "bool"):
            p.add_argument(f"--{f.name.replace('_', '-')}", action="store_true")
        else:
            p.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=f.default)
    raise SystemExit(main(AuditConfig(**vars(p.parse_args()))))
