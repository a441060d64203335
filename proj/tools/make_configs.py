#!/usr/bin/env python3
"""Writes the bundled experiment configs into configs/."""

import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "configs"

STARFISH_GRID = [[-2.0, -2.0], [2.0, -2.0], [-2.0, 2.0], [2.0, 2.0]]


def smooth(n, d):
    return {"type": "smooth", "N": n, "d": d}


def panels(m, n_refine, d, p=16):
    return {"type": "panels", "m": m, "p": p, "n_refine": n_refine, "d": d}


def grid_centers(nx, ny, spacing):
    x0 = -(nx - 1) * spacing / 2
    y0 = -(ny - 1) * spacing / 2
    return [[x0 + i * spacing, y0 + j * spacing] for j in range(ny) for i in range(nx)]


def plane_wave(angle=0.0):
    return {"type": "plane_wave", "direction": [math.cos(angle), math.sin(angle)], "amplitude": [1.0, 0.0]}


def base(name, kappa, eps, gmres_tol, scatterers, incoming, reference, dim=2, **outputs):
    cfg = {
        "name": name,
        "dim": dim,
        "kappa": kappa,
        "eps": eps,
        "gmres_tol": gmres_tol,
        "scatterers": scatterers,
        "incoming": incoming,
        "reference": reference,
    }
    if outputs:
        cfg["outputs"] = outputs
    return cfg


def write(cfg):
    OUT.mkdir(exist_ok=True)
    (OUT / f"{cfg['name']}.json").write_text(json.dumps(cfg, indent=2) + "\n")


def starfish_row(kappa_name, kappa, n, eps):
    d = 0.08 if n == 352 else 0.1
    scat = [{"shape": {"kind": "starfish"}, "center": c, "discretization": smooth(n, d)} for c in STARFISH_GRID]
    ref = {"type": "self", "discretization": {"starfish": smooth(704, 0.08)}}
    write(base(f"starfish4_k{kappa_name}_N{n}", kappa, eps, eps / 10, scat, plane_wave(), ref,
               condition_number=True))


def main():
    for kappa_name, kappa, eps in [("1", 1.0, 1e-10), ("pi", math.pi, 1e-10), ("10", 10.0, 1e-10), ("25", 25.0, 1e-8)]:
        for n in (192, 256, 352):
            starfish_row(kappa_name, kappa, n, eps)

    scat = [{"shape": {"kind": "starfish"}, "center": c, "discretization": smooth(352, 0.08)} for c in STARFISH_GRID]
    write(base("starfish4_k25_manufactured", 25.0, 1e-8, 1e-9, scat, {"type": "manufactured"},
               {"type": "manufactured"}))

    disks = [{"shape": {"kind": "circle", "radius": 1.0}, "center": c, "discretization": smooth(128, 0.25)}
             for c in ([-2.5, 0.0], [2.5, 0.0])]
    write(base("manufactured_2disk", 5.0, 1e-10, 1e-11, disks, {"type": "manufactured"}, {"type": "manufactured"}))

    tear_centers = grid_centers(4, 2, 4.5)
    for m, n_refine, d in [(8, 20, 0.25), (16, 20, 0.25)]:
        scat = [{"shape": {"kind": "teardrop"}, "center": c, "discretization": panels(m, n_refine, d)}
                for c in tear_centers]
        ref = {"type": "self", "discretization": {"teardrop": panels(128, 24, 0.1)}}
        write(base(f"teardrop8_k25_m{m}", 25.0, 1e-10, 1e-11, scat, plane_wave(), ref, condition_number=True))

    cav_centers = grid_centers(4, 2, 4.5)
    for m_seg in (16, 32):
        scat = [{"shape": {"kind": "cshape"}, "center": c, "discretization": panels(4 * m_seg, 5, 0.1)}
                for c in cav_centers]
        ref = {"type": "self", "discretization": {"cshape": panels(4 * 64, 5, 0.1)}}
        write(base(f"cavity8_k25_mseg{m_seg}", 25.0, 1e-10, 1e-11, scat, plane_wave(), ref))

    for nu in (16, 32):
        scat = [
            {"shape": {"kind": "ellipsoid"}, "center": [-2.0, 0.0, 0.0], "rotation": [0.0, 0.0, 0.0],
             "discretization": {"type": "surface", "Nu": nu, "Nv": nu, "d": 0.1}},
            {"shape": {"kind": "ellipsoid"}, "center": [2.0, 0.0, 0.0], "rotation": [0.5, 0.8, 0.2],
             "discretization": {"type": "surface", "Nu": nu, "Nv": nu, "d": 0.1}},
        ]
        write(base(f"ellipsoid2_k5_N{nu * nu}", 5.0, 1e-6, 1e-7, scat, {"type": "manufactured"},
                   {"type": "manufactured"}, dim=3))

    mixed = [
        ({"kind": "starfish"}, smooth(250, 0.08)),
        ({"kind": "cshape"}, panels(38, 0, 0.12)),
        ({"kind": "teardrop"}, panels(9, 10, 0.30)),
        ({"kind": "rod"}, panels(14, 1, 2.0 / 15.0)),
    ]
    for t, (nx, ny) in [(4, (2, 2)), (8, (4, 2)), (16, (4, 4))]:
        scat = []
        for i, c in enumerate(grid_centers(nx, ny, 4.5)):
            shape, disc = mixed[i % 4]
            scat.append({"shape": shape, "center": c, "rotation": 0.4 * i, "discretization": disc})
        write(base(f"mixed_T{t}", 25.0, 1e-6, 1e-6, scat, plane_wave(0.3), {"type": "none"}))


if __name__ == "__main__":
    main()
