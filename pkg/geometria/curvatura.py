"""
Módulo: Curvatura
Geometria riemanniana exata no nível do referencial: conexão de Levi-Civita
pela fórmula de Koszul, tensor de Riemann, Ricci, escalar, curvatura
seccional e derivada de Lie da métrica ao longo de campos invariantes.

Convenção: R(X,Y)Z = ∇_X∇_YZ - ∇_Y∇_XZ - ∇_[X,Y]Z e
R(X,Y,Z,W) = g(R(X,Y)Z, W), de modo que a esfera redonda tem Sec = +1.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional, Tuple

import numpy as np

from geometria.referencial import MetricaReferencial, Referencial, Vetorial, coeficientes
from nucleo.erros import ErroEntrada, ErroPlanoDegenerado
from nucleo.politica import POLITICA_PADRAO, PoliticaNumerica


@dataclass(frozen=True, eq=False)
class PacoteCurvatura:
    """
    Conexão e curvatura no referencial.

    gamma[i,j,k]: ∇_{e_i} e_j = Σ_k gamma[i,j,k] e_k
    riemann[i,j,k,l]: R(e_i, e_j, e_k, e_l)
    """

    gamma: np.ndarray
    riemann: Optional[np.ndarray] = None
    ricci: Optional[np.ndarray] = None
    escalar: Optional[float] = None


class GeometriaReferencial:
    """
    Calcula conexão e curvatura de (referencial, métrica).

    Os resultados são cacheados; a instância nunca altera suas entradas.
    """

    def __init__(
        self,
        referencial: Referencial,
        metrica: MetricaReferencial,
        politica: PoliticaNumerica = POLITICA_PADRAO,
    ):
        if referencial.dim != metrica.dim:
            raise ErroEntrada(
                f"❌ Dimensões incompatíveis: referencial {referencial.dim}, "
                f"métrica {metrica.dim}"
            )
        self.referencial = referencial
        self.metrica = metrica
        self.politica = politica

    @property
    def dim(self) -> int:
        return self.referencial.dim

    # ============================================================
    # Conexão
    # ============================================================

    @cached_property
    def gamma(self) -> np.ndarray:
        """2g(∇_i e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j)."""
        c = self.referencial.colchetes
        g = self.metrica.gram
        baixo = np.einsum("ijl,lk->ijk", c, g)
        koszul = 0.5 * (
            baixo
            - baixo.transpose(2, 0, 1)
            + baixo.transpose(1, 2, 0)
        )
        return np.einsum("ijl,lk->ijk", koszul, self.metrica.inversa)

    def conexao_koszul(self) -> PacoteCurvatura:
        return PacoteCurvatura(gamma=self.gamma)

    def derivada_covariante(self, v: Vetorial, w: Vetorial) -> np.ndarray:
        """Coeficientes de ∇_v w para campos invariantes."""
        return np.einsum("a,b,abk->k", coeficientes(v), coeficientes(w), self.gamma)

    def nabla_campo(self, X: Vetorial) -> np.ndarray:
        """Matriz D com D[i,k] = coeficiente de e_k em ∇_{e_i} X."""
        return np.einsum("a,iak->ik", coeficientes(X), self.gamma)

    def norma_nabla_quadrada(self, X: Vetorial) -> float:
        """|∇X|² = Σ_{i,j} g^{ij} g(∇_i X, ∇_j X)."""
        D = self.nabla_campo(X)
        g = self.metrica.gram
        return float(np.trace(self.metrica.inversa @ D @ g @ D.T))

    # ============================================================
    # Curvatura
    # ============================================================

    @cached_property
    def _riemann(self) -> np.ndarray:
        G = self.gamma
        c = self.referencial.colchetes
        endo = (
            np.einsum("jkl,ilp->ijkp", G, G)
            - np.einsum("ikl,jlp->ijkp", G, G)
            - np.einsum("ijl,lkp->ijkp", c, G)
        )
        return np.einsum("ijkp,pl->ijkl", endo, self.metrica.gram)

    @cached_property
    def _ricci(self) -> np.ndarray:
        ric = np.einsum("il,ijkl->jk", self.metrica.inversa, self._riemann)
        return 0.5 * (ric + ric.T)

    def curvatura(self) -> PacoteCurvatura:
        escalar = float(np.einsum("jk,jk->", self.metrica.inversa, self._ricci))
        return PacoteCurvatura(
            gamma=self.gamma,
            riemann=self._riemann,
            ricci=self._ricci,
            escalar=escalar,
        )

    @property
    def ricci(self) -> np.ndarray:
        return self._ricci

    @property
    def escalar(self) -> float:
        return float(np.einsum("jk,jk->", self.metrica.inversa, self._ricci))

    def seccional(self, v: Vetorial, w: Vetorial) -> float:
        """R(v,w,w,v) / (|v|²|w|² - g(v,w)²)."""
        v, w = coeficientes(v), coeficientes(w)
        denominador = (
            self.metrica.norma_quadrada(v) * self.metrica.norma_quadrada(w)
            - self.metrica.produto(v, w) ** 2
        )
        if denominador < self.politica.plano_degenerado:
            raise ErroPlanoDegenerado(
                f"❌ Plano degenerado: |v ∧ w|² = {denominador:.3e}"
            )
        numerador = np.einsum("ijkl,i,j,k,l->", self._riemann, v, w, w, v)
        return float(numerador / denominador)

    # ============================================================
    # Derivada de Lie e campos de Killing
    # ============================================================

    def derivada_lie_metrica(self, X: Vetorial) -> np.ndarray:
        """(L_X g)(e_i, e_j) = g(∇_i X, e_j) + g(∇_j X, e_i)."""
        baixo = self.nabla_campo(X) @ self.metrica.gram
        return baixo + baixo.T

    def eh_killing(self, X: Vetorial) -> Tuple[bool, float]:
        residuo = self.metrica.norma_tensor(self.derivada_lie_metrica(X))
        return residuo <= self.politica.estrutural, residuo

    def diferencial_covetor(self, alfa: np.ndarray) -> np.ndarray:
        """dα(e_i, e_j) = -α([e_i, e_j]) para um covetor invariante α."""
        return -np.einsum("ijk,k->ij", self.referencial.colchetes, np.asarray(alfa, float))

    # ============================================================
    # Identidades estruturais
    # ============================================================

    def verificar_identidades(self) -> Dict[str, float]:
        """
        Resíduos máximos (no referencial g-ortonormal) de todas as identidades
        que o pacote de curvatura precisa satisfazer.
        """
        g = self.metrica
        G_baixo = np.einsum("ijl,lk->ijk", self.gamma, g.gram)
        torcao = self.gamma - self.gamma.transpose(1, 0, 2) - self.referencial.colchetes
        R = self._riemann
        ric_direto = np.einsum("il,ijkl->jk", g.inversa, R)

        residuos = {
            "compatibilidade_metrica": G_baixo + G_baixo.transpose(0, 2, 1),
            "torcao": np.einsum("ijl,lk->ijk", torcao, g.gram),
            "antissimetria_12": R + R.transpose(1, 0, 2, 3),
            "antissimetria_34": R + R.transpose(0, 1, 3, 2),
            "troca_de_pares": R - R.transpose(2, 3, 0, 1),
            "bianchi": R + R.transpose(1, 2, 0, 3) + R.transpose(2, 0, 1, 3),
            "simetria_ricci": ric_direto - ric_direto.T,
        }
        return {
            nome: float(np.max(np.abs(g.componentes_ortonormais(T)), initial=0.0))
            for nome, T in residuos.items()
        }
