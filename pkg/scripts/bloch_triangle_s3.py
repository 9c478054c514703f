"""Three qubit-axis algebras at 120 degrees: their modular conjugations permute the family like S3."""

import json

from wedgelab import modular
from wedgelab.catalog import bloch_triangle_family


def main() -> None:
    family = bloch_triangle_family()
    result = modular.cgma_permutations(family)
    if not result.ok:
        print(json.dumps(result.to_json(), indent=2))
        raise SystemExit(2)
    group = modular.group_and_properties(result.taus, maximal_abelian=[True] * len(family.members))
    print(json.dumps({
        "permutations": result.to_json()["taus_cycles"],
        "operator_covariance_defect": modular.operator_covariance_defect(result),
        "group": group.to_json(),
    }, indent=2, default=float))


if __name__ == "__main__":
    main()
