"""Regenerates the frozen reference values in tests/golden.hpp.

Requires PySCF and SciPy. Not part of the build.
"""
import numpy as np
from pyscf import fci, gto, scf
from scipy.optimize import minimize_scalar


def load_basis(path="data/sto3g.basis"):
    records, current = {}, None
    for line in open(path):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            current = parts[0]
            records[current] = []
        else:
            records[current].append(" ".join(parts))
    return {el: gto.basis.parse(f"{el} S\n" + "\n".join(rows)) for el, rows in records.items()}


BASIS = load_basis()


def heh(R):
    return gto.M(atom=[["He", (0, 0, 0)], ["H", (0, 0, R)]], unit="bohr", basis=BASIS, charge=1, verbose=0)


def solve(mol, nroots=4):
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    e_hf = mf.kernel()
    solver = fci.FCI(mf)
    solver.nroots = nroots
    roots, _ = solver.kernel()
    return mf, e_hf, roots


def main():
    he = gto.M(atom=[["He", (0, 0, 0)]], unit="bohr", basis=BASIS, verbose=0)
    print("He atom HF", repr(scf.RHF(he).kernel()))

    mol = heh(1.4632)
    print("S", repr(mol.intor("int1e_ovlp")))
    print("T", repr(mol.intor("int1e_kin")))
    print("V", repr(mol.intor("int1e_nuc")))
    print("Dz", repr(mol.intor("int1e_r")[2]))
    eri = mol.intor("int2e")
    for idx in [(0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 1), (1, 1, 1, 1)]:
        print("eri", idx, repr(eri[idx]))
    mf, e_hf, roots = solve(mol)
    print("E_HF", repr(e_hf), "Enn", repr(mol.energy_nuc()), "eps", repr(mf.mo_energy))
    print("fci", [repr(x) for x in roots])

    _, e_hf, roots = solve(heh(1.7))
    print("R=1.7 E_HF", repr(e_hf), "fci", [repr(x) for x in roots])

    best = minimize_scalar(lambda R: solve(heh(R), 1)[2], bracket=(1.5, 1.7, 2.0), tol=1e-10)
    print("fci minimum", repr(best.x), repr(best.fun))
    for R in (5.5, 6.0):
        print("fci", R, repr(solve(heh(R), 1)[2]))


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    main()
