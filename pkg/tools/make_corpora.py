"""Regenerate the corpus files shipped in src/smalldoubling/corpora."""
import json
from pathlib import Path

from smalldoubling.groups import (
    BaumslagSolitar12,
    DirectProduct,
    FreeGroup,
    GoldenSemidirect,
    Heisenberg,
    IntegerLattice,
)
from smalldoubling.search.balls import BallSpec
from smalldoubling.search.constructions import construction_generators, construction_group

OUT = Path(__file__).resolve().parents[1] / "src" / "smalldoubling" / "corpora"

Z, Z2, Z3 = IntegerLattice(1), IntegerLattice(2), IntegerLattice(3)
H, BS, GOLD, F2 = Heisenberg(), BaumslagSolitar12(), GoldenSemidirect(), FreeGroup(2)
ZF2 = construction_group()
ZBS = DirectProduct(Z, BS)
HXY = ((1, 0, 0), (0, 1, 0))


def std(spec, radius, **kw):
    return BallSpec.standard(spec, radius, **kw).to_json()


def corpus(name, ball, **kw):
    return {"name": name, "ball": ball, **kw}


THEOREM_PARAMS = {
    "T1_5_i": {
        "corpora": [
            corpus("Z_r7", std(Z, 7), k_min=2, k_max=5),
            corpus("Z2_r2", std(Z2, 2), k_min=2, k_max=5),
            corpus("F2_pos_r3", std(F2, 3, positive=True), k_min=2, k_max=5),
            corpus("H_xy_pos_r3", BallSpec(H, HXY, 3, positive=True).to_json(), k_min=2, k_max=5),
            corpus("BS_pos_r3", std(BS, 3, positive=True), k_min=2, k_max=5),
            corpus("Golden_pos_r3", std(GOLD, 3, positive=True), k_min=2, k_max=5),
            corpus(
                "ZxF2_pos_r2",
                BallSpec(ZF2, construction_generators(), 2, positive=True).to_json(),
                k_min=2,
                k_max=5,
            ),
        ]
    },
    "T1_1": {
        "corpora": [
            corpus("Z_r44_k11", std(Z, 44), k=11, normalize="translate_and_primitive_ratio"),
            corpus("Z_r12", std(Z, 12), k_min=2, k_max=8, normalize="translate_min_to_identity"),
            corpus("Z2_r2", std(Z2, 2), k_min=3, k_max=6),
            corpus("Z3_r1", std(Z3, 1), k_min=3, k_max=5),
            corpus("H_r2", std(H, 2), k_min=3, k_max=5),
            corpus("BS_r2", std(BS, 2), k_min=3, k_max=5),
        ],
        "random_two_ap": {"count": 1000, "seed": 0, "max_gap": 1000000},
    },
    "T1_2": {
        "corpora": [
            corpus("Z_r30_k12", std(Z, 30), k=12, normalize="translate_and_primitive_ratio"),
            corpus("Z_r12", std(Z, 12), k_min=4, k_max=8, normalize="translate_min_to_identity"),
            corpus("Z2_r2", std(Z2, 2), k_min=4, k_max=6),
            corpus("Z3_r1", std(Z3, 1), k_min=4, k_max=5),
        ]
    },
    "T1_4": {
        "c": 2,
        "corpora": [
            corpus("Z2_r2", std(Z2, 2), k_min=3, k_max=6),
            corpus("Z3_r1", std(Z3, 1), k_min=3, k_max=6),
        ],
    },
    "T1_5_iv": {
        "b_max": 2,
        "corpora": [
            corpus("Z2_r2", std(Z2, 2), k_min=4, k_max=6),
            corpus("Z3_r1", std(Z3, 1), k_min=4, k_max=5),
            corpus("H_r2", std(H, 2), k_min=4, k_max=5),
            corpus("BS_r2", std(BS, 2), k_min=4, k_max=4),
        ],
    },
    "P5_forms": {
        "corpora": [
            corpus("H_r3", std(H, 3)),
            corpus("BS_r3", std(BS, 3)),
            corpus("Golden_r3", std(GOLD, 3)),
        ]
    },
    "P6_forms": {
        "corpora": [
            corpus("H_r3", std(H, 3), k_min=4, k_max=5),
            corpus("BS_r3", std(BS, 3), k=4),
            corpus("Golden_r3", std(GOLD, 3), k=4),
            corpus("ZxBS_r2", std(ZBS, 2), k=4),
        ]
    },
    "T1_6_k4": {
        "seed": 0,
        "law": {"radius": 5, "samples": 10000},
        "corpora": [
            corpus("H_r2", std(H, 2)),
            corpus("BS_r2", std(BS, 2)),
        ],
    },
    "T1_8_s1": {
        "seed": 0,
        "k": 8,
        "sample": 1000,
        "law": {"radius": 5, "samples": 1000},
        "corpora": [
            corpus("Z_r6", std(Z, 6)),
            corpus("H_r2", std(H, 2)),
            corpus("H_pos_r3", std(H, 3, positive=True)),
            corpus("H_xy_r3", BallSpec(H, HXY, 3).to_json()),
        ],
    },
    "T1_9": {"seed": 0, "k_min": 3, "k_max": 20, "law": {"radius": 4, "samples": 1000}},
}

# small enumeration tasks (ball size <= 12, k <= 4) for brute-force comparison
ENUM_TASKS = {
    "enum_Z_r5_k4": {"ball": std(Z, 5), "k": 4, "alpha": "3", "beta": -3},
    "enum_Z2_pos_r3_k4": {"ball": std(Z2, 3, positive=True), "k": 4, "alpha": "3", "beta": -2},
    "enum_H_pos_r2_k3": {"ball": std(H, 2, positive=True), "k": 3, "alpha": "7/3", "beta": 0},
    "enum_BS_pos_r2_k4": {"ball": std(BS, 2, positive=True), "k": 4, "alpha": "3", "beta": -2},
    "enum_F2_pos_r2_k3": {"ball": std(F2, 2, positive=True), "k": 3, "alpha": "3", "beta": -2},
    "enum_Golden_pos_r2_k4": {"ball": std(GOLD, 2, positive=True), "k": 4, "alpha": "4", "beta": -5},
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for tid, params in THEOREM_PARAMS.items():
        obj = {"version": "1", "theorem": tid, "params": params}
        (OUT / f"{tid}.json").write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")
    for name, task in ENUM_TASKS.items():
        task = {**task, "normalize": "none"}
        obj = {"version": "1", "task": task}
        (OUT / f"{name}.json").write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
