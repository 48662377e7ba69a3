import argparse
import json

from calibration import RHO_TABLE, DiscrepancyKind, rho_table_check

from ..run_config import RhoCheckConfig


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--json",
        dest="as_json",
        action="store_const",
        const=True,
        help="Print machine-readable output",
    )
    parser.add_argument("--step", type=float, help="Finite-difference step")
    parser.add_argument("--tolerance", type=float, help="Allowed deviation")


def check_all(config: RhoCheckConfig) -> list:
    rows = []
    for kind in DiscrepancyKind:
        derivatives = rho_table_check(kind.value, step=config.step)
        expected = RHO_TABLE[kind]
        passed = all(
            abs(got - want) <= config.tolerance
            for got, want in zip(derivatives, expected)
        )
        rows.append(
            {
                "discrepancy": kind.value,
                "rho1": derivatives[0],
                "rho2": derivatives[1],
                "rho3": derivatives[2],
                "expected": list(expected),
                "passed": passed,
            }
        )
    return rows


def run(config: RhoCheckConfig) -> int:
    rows = check_all(config)
    if config.as_json:
        payload = {"config": config.model_dump(mode="json"), "results": rows}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("".join(f"# {line}\n" for line in config.serialize().splitlines()))
        for row in rows:
            status = "PASS" if row["passed"] else "FAIL"
            print(
                f"{row['discrepancy']:<16}"
                f"({row['rho1']: .6f}, {row['rho2']: .6f}, {row['rho3']: .6f})  {status}"
            )
    return 0 if all(row["passed"] for row in rows) else 1
