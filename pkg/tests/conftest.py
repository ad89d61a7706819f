import sys
from pathlib import Path

import numpy as np
import pytest

# Adiciona o diretório raiz ao path para imports funcionarem
BASE_DIR = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(BASE_DIR))

from analise.quasi_einstein import AnalisadorQE
from dados.catalogo import CatalogoExemplos, referencial_h2_r, referencial_heisenberg, referencial_su2
from geometria.referencial import MetricaReferencial, Referencial
from nucleo.politica import POLITICA_PADRAO


VALORES_T_BERGER = (1.25, 1.5, 2.0, 3.0, 4.0)
VALORES_M_BERGER = (1.0, 2.0, 5.0)


def metrica_aleatoria(rng: np.random.Generator, d: int) -> MetricaReferencial:
    """SPD bem condicionada: BᵀB + I."""
    B = rng.normal(size=(d, d))
    return MetricaReferencial(B.T @ B + np.eye(d))


def referencial_aleatorio(rng: np.random.Generator) -> Referencial:
    """Um dos referenciais conhecidos numa base aleatória (Jacobi preservado)."""
    base = [referencial_su2, referencial_heisenberg, referencial_h2_r][rng.integers(3)]()
    while True:
        P = rng.normal(size=(3, 3))
        if abs(np.linalg.det(P)) > 0.2:
            return base.mudanca_de_base(P)


def referencial_unimodular_aleatorio(rng: np.random.Generator) -> Referencial:
    """Unimodular 3D: c[i,j,k] = Σ_l ε_ijl n_lk com n simétrica (Jacobi exato)."""
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k], eps[j, i, k] = 1.0, -1.0
    A = rng.normal(size=(3, 3))
    n = 0.5 * (A + A.T)
    return Referencial(3, np.einsum("ijl,lk->ijk", eps, n))


@pytest.fixture
def politica():
    return POLITICA_PADRAO


@pytest.fixture
def qe():
    return AnalisadorQE()


@pytest.fixture(scope="session")
def catalogo():
    return CatalogoExemplos()


@pytest.fixture
def su2():
    return referencial_su2()


@pytest.fixture
def redonda():
    return MetricaReferencial(np.eye(3))
