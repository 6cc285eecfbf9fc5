#!/usr/bin/env python3
"""Generate the synthetic GYMLGS two-strand template used by the tests.

Builds an idealized antiparallel beta-strand from internal coordinates,
aligns it so the strand runs along z, side chains alternate along +/-x and
backbone carbonyls alternate along +/-y, then emits chain A and its
antiparallel partner chain B (2-fold about y, stacked 4.7765 A along y).

Usage: python3 make_fixture.py [out.pdb]
"""
import sys
import numpy as np

SEQ = ["GLY", "TYR", "MET", "LEU", "GLY", "SER"]
FIRST_SEQ = 127
PHI, PSI, OMEGA = -150.0, 135.0, 180.0
STACK = 4.7765
B_SHIFT_Z = -1.0


def place(a, b, c, bond, angle, torsion):
    """NeRF: position d given a, b, c and internal coordinates of d."""
    angle, torsion = np.radians(angle), np.radians(torsion)
    bc = c - b
    bc /= np.linalg.norm(bc)
    n = np.cross(b - a, bc)
    n /= np.linalg.norm(n)
    m = np.cross(n, bc)
    d2 = np.array([-bond * np.cos(angle),
                   bond * np.sin(angle) * np.cos(torsion),
                   bond * np.sin(angle) * np.sin(torsion)])
    return c + d2[0] * bc + d2[1] * m + d2[2] * n


def backbone():
    n = np.array([0.0, 1.458, 0.0])
    ca = np.array([0.0, 0.0, 0.0])
    c = place(np.array([1.0, 2.0, 0.0]), n, ca, 1.525, 111.0, -60.0)
    res = []
    for i in range(len(SEQ)):
        o = place(n, ca, c, 1.231, 120.5, PSI + 180.0)
        res.append({"N": n, "CA": ca, "C": c, "O": o})
        if i + 1 == len(SEQ):
            break
        n2 = place(n, ca, c, 1.329, 116.2, PSI)
        ca2 = place(ca, c, n2, 1.458, 121.7, OMEGA)
        c2 = place(c, n2, ca2, 1.525, 111.0, PHI)
        n, ca, c = n2, ca2, c2
    return res


def cb_position(n, ca, c):
    # Ideal L-amino-acid CB from the backbone frame.
    b = ca - n
    cc = c - ca
    a = np.cross(b, cc)
    return -0.58273431 * a + 0.56802827 * b - 0.54067466 * cc + ca


def side_chain(name, atoms):
    n, ca, c = atoms["N"], atoms["CA"], atoms["C"]
    out = []
    if name == "GLY":
        return out
    cb = cb_position(n, ca, c)
    out.append(("CB", cb, "C"))
    chains = {
        "TYR": [("CG", "C"), ("CD1", "C"), ("CD2", "C"), ("CE1", "C"),
                ("CE2", "C"), ("CZ", "C"), ("OH", "O")],
        "MET": [("CG", "C"), ("SD", "S"), ("CE", "C")],
        "LEU": [("CG", "C"), ("CD1", "C"), ("CD2", "C")],
        "SER": [("OG", "O")],
    }[name]
    # Coarse extended side chains: walk outward along CA->CB with a zigzag;
    # only CB survives mutation to Ala, the rest only has to be plausible.
    if name == "TYR":
        cg = place(n, ca, cb, 1.51, 114.0, -60.0)
        cd1 = place(ca, cb, cg, 1.39, 121.0, 90.0)
        cd2 = place(ca, cb, cg, 1.39, 121.0, -90.0)
        ce1 = place(cb, cg, cd1, 1.39, 120.0, 180.0)
        ce2 = place(cb, cg, cd2, 1.39, 120.0, 180.0)
        cz = place(cg, cd1, ce1, 1.39, 120.0, 0.0)
        oh = place(cd1, ce1, cz, 1.36, 120.0, 180.0)
        pts = [cg, cd1, cd2, ce1, ce2, cz, oh]
    elif name == "MET":
        cg = place(n, ca, cb, 1.52, 114.0, -60.0)
        sd = place(ca, cb, cg, 1.81, 112.7, 180.0)
        ce = place(cb, cg, sd, 1.79, 100.5, 180.0)
        pts = [cg, sd, ce]
    elif name == "LEU":
        cg = place(n, ca, cb, 1.53, 116.0, -60.0)
        cd1 = place(ca, cb, cg, 1.52, 110.5, 180.0)
        cd2 = place(ca, cb, cg, 1.52, 110.5, 60.0)
        pts = [cg, cd1, cd2]
    else:
        pts = [place(n, ca, cb, 1.417, 111.0, -60.0)]
    for (nm, el), p in zip(chains, pts):
        out.append((nm, p, el))
    return out


def build_strand():
    bb = backbone()
    residues = []
    for name, atoms in zip(SEQ, bb):
        lst = [("N", atoms["N"], "N"), ("CA", atoms["CA"], "C"),
               ("C", atoms["C"], "C"), ("O", atoms["O"], "O")]
        lst += side_chain(name, atoms)
        residues.append(lst)
    # Frame: z along the strand, x along the alternating CA->CB direction.
    cas = np.array([dict((a[0], a[1]) for a in r)["CA"] for r in residues])
    z = cas[-1] - cas[0]
    z /= np.linalg.norm(z)
    alt = np.zeros(3)
    for i, r in enumerate(residues):
        d = dict((a[0], a[1]) for a in r)
        cb = cb_position(d["N"], d["CA"], d["C"])
        alt += (cb - d["CA"]) * (1 if i % 2 == 0 else -1)
    x = alt - np.dot(alt, z) * z
    x /= np.linalg.norm(x)
    y = np.cross(z, x)
    rot = np.array([x, y, z])
    centre = cas.mean(axis=0)
    out = []
    for r in residues:
        out.append([(nm, rot @ (p - centre), el) for nm, p, el in r])
    # Residue 3 (MET) must face +x.
    d3 = dict((a[0], a[1]) for a in out[2])
    if d3["CB"][0] - d3["CA"][0] < 0:
        flip = np.diag([-1.0, -1.0, 1.0])
        out = [[(nm, flip @ p, el) for nm, p, el in r] for r in out]
    return out


def emit(chains):
    lines = ["HEADER    SYNTHETIC TEMPLATE                      19-OCT-26   XXXX",
             "REMARK   1 SYNTHETIC GYMLGS TWO-STRAND STERIC ZIPPER TEMPLATE"]
    serial = 1
    for cid, residues in chains:
        for k, r in enumerate(residues):
            for nm, p, el in r:
                name = nm if len(nm) == 4 else " " + nm.ljust(3)
                lines.append("ATOM  %5d %-4s %3s %s%4d    %8.3f%8.3f%8.3f%6.2f%6.2f          %2s"
                             % (serial, name, SEQ[k], cid, FIRST_SEQ + k,
                                p[0], p[1], p[2], 1.0, 0.0, el))
                serial += 1
        lines.append("TER")
    lines.append("END")
    return "\n".join(lines) + "\n"


def main():
    a = build_strand()
    ry = np.diag([-1.0, 1.0, -1.0])
    shift = np.array([0.0, STACK, B_SHIFT_Z])
    b = [[(nm, ry @ p + shift, el) for nm, p, el in r] for r in a]
    # Round through F8.3 so downstream arithmetic sees file values.
    text = emit([("A", a), ("B", b)])
    out = sys.argv[1] if len(sys.argv) > 1 else "gymlgs_template.pdb"
    with open(out, "w") as fh:
        fh.write(text)


if __name__ == "__main__":
    main()
