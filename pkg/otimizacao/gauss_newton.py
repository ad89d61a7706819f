"""
Módulo: Gauss-Newton
Mínimos quadrados não lineares pequenos e densos:

    min Σ_i r_i(p)²

Passo de Gauss-Newton de norma mínima (lstsq, tolera jacobiano de posto
deficiente ao longo de famílias de soluções), busca linear de Armijo e
jacobiano por diferenças centrais.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

Residuo = Callable[[np.ndarray], np.ndarray]


@dataclass
class ResultadoGaussNewton:
    x: np.ndarray
    norma: float
    iteracoes: int
    convergiu: bool
    motivo: str


def jacobiano_central(residuo: Residuo, x: np.ndarray, passo_relativo: float = 1e-6) -> np.ndarray:
    """J[:, j] = (r(x + h e_j) - r(x - h e_j)) / 2h, com h = passo·max(1, |x_j|)."""
    colunas = []
    for j in range(x.size):
        h = passo_relativo * max(1.0, abs(x[j]))
        mais = x.copy()
        menos = x.copy()
        mais[j] += h
        menos[j] -= h
        colunas.append((residuo(mais) - residuo(menos)) / (2.0 * h))
    return np.column_stack(colunas) if colunas else np.zeros((residuo(x).size, 0))


def gauss_newton(
    residuo: Residuo,
    x0: np.ndarray,
    max_iteracoes: int = 100,
    tol: float = 1e-8,
    jacobiano: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    gamma: float = 0.5,
    c_1: float = 1e-4,
    alfa_min: float = 1e-10,
    gtol: float = 1e-14,
) -> ResultadoGaussNewton:
    """
    Gauss-Newton com busca linear de Armijo.

    Args:
        residuo: p -> vetor de resíduos
        x0: ponto inicial
        tol: para quando |r| <= tol (convergência)
        jacobiano: opcional; por padrão diferenças centrais
        gamma: fator de redução do passo
        c_1: parâmetro de Armijo, 0 < c_1 < 1
        alfa_min: passo mínimo antes de declarar estagnação
        gtol: gradiente abaixo disso encerra sem convergência
    """
    assert 0 < c_1 < 1, "parâmetro de Armijo inadequado"
    if jacobiano is None:
        jacobiano = lambda p: jacobiano_central(residuo, p)

    x_k = np.array(x0, dtype=float, copy=True)
    r_k = residuo(x_k)
    if not np.all(np.isfinite(r_k)):
        return ResultadoGaussNewton(x_k, float("inf"), 0, False, "nao_finito")
    f_k = float(r_k @ r_k)

    for nn in range(max_iteracoes):
        if np.sqrt(f_k) <= tol:
            return ResultadoGaussNewton(x_k, float(np.sqrt(f_k)), nn, True, "convergiu")

        J_k = jacobiano(x_k)
        if not np.all(np.isfinite(J_k)):
            return ResultadoGaussNewton(x_k, float(np.sqrt(f_k)), nn, False, "nao_finito")
        g_k = 2.0 * J_k.T @ r_k
        if np.linalg.norm(g_k) <= gtol:
            return ResultadoGaussNewton(x_k, float(np.sqrt(f_k)), nn, False, "gradiente_nulo")

        p_k, *_ = np.linalg.lstsq(J_k, -r_k, rcond=None)

        # busca linear com a condição de Armijo
        alfa = 1.0
        while True:
            x_novo = x_k + alfa * p_k
            r_novo = residuo(x_novo)
            f_novo = float(r_novo @ r_novo) if np.all(np.isfinite(r_novo)) else float("inf")
            if f_novo <= f_k + c_1 * alfa * (g_k @ p_k):
                break
            alfa *= gamma
            if alfa <= alfa_min:
                return ResultadoGaussNewton(x_k, float(np.sqrt(f_k)), nn, False, "passo_pequeno")

        x_k, r_k, f_k = x_novo, r_novo, f_novo

    convergiu = np.sqrt(f_k) <= tol
    return ResultadoGaussNewton(
        x_k, float(np.sqrt(f_k)), max_iteracoes, bool(convergiu),
        "convergiu" if convergiu else "max_iteracoes",
    )
