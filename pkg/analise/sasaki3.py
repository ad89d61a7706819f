"""
Módulo: Sasaki 3D
Estruturas sasakianas em dimensão três a partir de triplos quasi-Einstein:
critério pela curvatura seccional dos planos que contêm ξ, normalização
sasakiana, η-Einstein, curvatura φ-seccional, D-homotetia e o
classificador nos "baldes" de Thurston.

Fronteira dos baldes: após a normalização sasakiana, a D-homotetia leva H
aos valores modelo {1, -3, -4}; o sinal de H + 3 é preservado e é ele que
separa esférica / Nil / SL2~.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from analise.quasi_einstein import AnalisadorQE, TriploQE
from geometria.curvatura import GeometriaReferencial
from geometria.referencial import MetricaReferencial, Referencial, VetorReferencial, Vetorial, coeficientes
from nucleo.erros import (
    ErroDimensao,
    ErroEstruturaDegenerada,
    ErroInvariante,
    ErroNaoKilling,
    ErroNaoReescalavel,
    ErroParametro,
    ErroPrecondicao,
    ErroSolucaoTrivial,
)
from nucleo.politica import POLITICA_PADRAO, PoliticaNumerica


class GeometriaThurston(Enum):
    ESFERICA = "Spherical"
    NIL = "Nil"
    SL2_TIL = "SL2Tilde"
    PRODUTO = "ProductSplit"


@dataclass(frozen=True, eq=False)
class EstruturaSasaki:
    """(ξ, η, φ) com φ(Y) = -∇_Y ξ; phi age em colunas de coeficientes."""

    xi: VetorReferencial
    eta: np.ndarray
    phi: np.ndarray


@dataclass
class ResultadoThurston:
    geometria: GeometriaThurston
    H: Optional[float] = None
    sasakiano: Optional[bool] = None
    desvio_sasaki: Optional[float] = None
    eta_einstein: Optional[Tuple[float, float]] = None
    escala_sasaki: Optional[float] = None

    def para_dict(self) -> Dict[str, Any]:
        return {
            "bucket": self.geometria.value,
            "H": self.H,
            "sasakian": self.sasakiano,
            "sasaki_deviation": self.desvio_sasaki,
            "eta_einstein": list(self.eta_einstein) if self.eta_einstein else None,
            "sasaki_scale": self.escala_sasaki,
        }


class AnalisadorSasaki3:
    """Maquinário sasakiano em dimensão 3."""

    def __init__(self, politica: PoliticaNumerica = POLITICA_PADRAO):
        self.politica = politica
        self.qe = AnalisadorQE(politica)

    # ============================================================
    # Helpers internos
    # ============================================================

    def _geometria(self, referencial, metrica) -> GeometriaReferencial:
        return GeometriaReferencial(referencial, metrica, self.politica)

    @staticmethod
    def _exigir_dim3(referencial: Referencial) -> None:
        if referencial.dim != 3:
            raise ErroDimensao(f"❌ Operação definida só em dimensão 3 (d = {referencial.dim})")

    def _exigir_unitario(self, metrica: MetricaReferencial, xi: Vetorial) -> None:
        norma = metrica.norma_quadrada(xi)
        if abs(norma - 1.0) > self.politica.validacao * 1e3:
            raise ErroPrecondicao(f"❌ ξ não é unitário (|ξ|² = {norma:.15g})")

    def _exigir_killing(self, geo: GeometriaReferencial, xi: Vetorial) -> None:
        killing, residuo = geo.eh_killing(xi)
        if not killing:
            raise ErroNaoKilling(f"❌ ξ não é Killing (|L_ξ g| = {residuo:.3e})")

    # ============================================================
    # Estrutura
    # ============================================================

    def estrutura_sasaki(self, referencial, metrica, xi: Vetorial) -> EstruturaSasaki:
        geo = self._geometria(referencial, metrica)
        self._exigir_unitario(metrica, xi)
        x = coeficientes(xi)
        phi = -geo.nabla_campo(x).T

        tol = self.politica.estrutural
        if np.max(np.abs(phi @ x)) > tol:
            raise ErroInvariante("❌ φ(ξ) ≠ 0")
        phi_baixo = metrica.gram @ phi
        if np.max(np.abs(phi_baixo + phi_baixo.T)) > tol * max(1.0, np.max(np.abs(phi_baixo))):
            raise ErroInvariante("❌ φ não é antissimétrico em relação a g")
        return EstruturaSasaki(VetorReferencial(x), metrica.abaixar(x), phi)

    def verificar_sasaki(self, referencial, metrica, xi: Vetorial) -> Tuple[bool, float]:
        """Sec(ξ, v) = 1 para os planos que contêm ξ."""
        self._exigir_dim3(referencial)
        geo = self._geometria(referencial, metrica)
        self._exigir_unitario(metrica, xi)
        self._exigir_killing(geo, xi)

        h1, h2 = metrica.complemento_ortonormal(xi)
        direcoes = (h1, h2, (h1 + h2) / np.sqrt(2.0))
        desvio = max(abs(geo.seccional(xi, v) - 1.0) for v in direcoes)
        return desvio <= self.politica.sasaki, float(desvio)

    # ============================================================
    # Normalização e deformações
    # ============================================================

    def reescalar_para_sasaki(self, triplo: TriploQE) -> TriploQE:
        """(s²g, X/s², m, λ/s²) com s² = (λ + |X|²/m)/2, de modo que λ̃ + |X̃|²/m = 2."""
        self.qe.exigir_qe(triplo)
        valor = triplo.positividade
        if valor <= self.politica.estrutural:
            raise ErroNaoReescalavel(
                f"❌ λ + |X|²/m = {valor:.6g} <= 0: caso produto, sem normalização sasakiana"
            )
        reescalado = triplo.reescalado(valor / 2.0)
        if abs(reescalado.positividade - 2.0) > self.politica.validacao * 10:
            raise ErroInvariante(
                f"❌ Normalização falhou: λ̃ + |X̃|²/m = {reescalado.positividade:.17g}"
            )
        return reescalado

    def d_homotetia(
        self, referencial, metrica, xi: Vetorial, t: float
    ) -> Tuple[MetricaReferencial, VetorReferencial, np.ndarray]:
        """g' = tg + (t² - t)η⊗η, ξ' = ξ/t, η' = tη."""
        if not t > 0:
            raise ErroParametro(f"❌ D-homotetia exige t > 0 (t = {t})")
        geo = self._geometria(referencial, metrica)
        self._exigir_unitario(metrica, xi)
        self._exigir_killing(geo, xi)

        eta = metrica.abaixar(xi)
        nova = MetricaReferencial(t * metrica.gram + (t * t - t) * np.outer(eta, eta))
        xi_novo = VetorReferencial(coeficientes(xi) / t)
        norma = nova.norma_quadrada(xi_novo)
        if abs(norma - 1.0) > self.politica.validacao * 1e3:
            raise ErroInvariante(f"❌ |ξ'|_g' = {norma:.17g} após D-homotetia")
        return nova, xi_novo, t * eta

    # ============================================================
    # Curvaturas
    # ============================================================

    def verificar_eta_einstein(self, referencial, metrica, xi: Vetorial) -> Tuple[float, float, float]:
        """Ajuste de mínimos quadrados Ric ≈ λg + νη⊗η no referencial ortonormal."""
        self._exigir_unitario(metrica, xi)
        geo = self._geometria(referencial, metrica)
        eta = metrica.abaixar(xi)

        ric = metrica.componentes_ortonormais(geo.ricci)
        eta_eta = metrica.componentes_ortonormais(np.outer(eta, eta))
        identidade = np.eye(metrica.dim)

        A = np.column_stack([identidade.ravel(), eta_eta.ravel()])
        (lam, nu), *_ = np.linalg.lstsq(A, ric.ravel(), rcond=None)
        residuo = float(np.linalg.norm(ric - lam * identidade - nu * eta_eta))
        return float(lam), float(nu), residuo

    def curvatura_phi_seccional(self, referencial, metrica, xi: Vetorial) -> float:
        """H = Sec(Y, φY) para Y ⊥ ξ unitário, avaliado em duas direções."""
        self._exigir_dim3(referencial)
        geo = self._geometria(referencial, metrica)
        self._exigir_unitario(metrica, xi)
        self._exigir_killing(geo, xi)

        phi = -geo.nabla_campo(coeficientes(xi)).T
        valores = []
        for Y in metrica.complemento_ortonormal(xi):
            phi_y = phi @ Y
            if np.sqrt(metrica.norma_quadrada(phi_y)) < self.politica.phi_degenerado:
                raise ErroEstruturaDegenerada("❌ φ degenerado: ∇ξ = 0 na direção horizontal")
            valores.append(geo.seccional(Y, phi_y))

        if abs(valores[0] - valores[1]) > self.politica.sasaki:
            raise ErroInvariante(
                f"❌ Curvatura φ-seccional não constante: {valores[0]:.12g} vs {valores[1]:.12g}"
            )
        return float(np.mean(valores))

    # ============================================================
    # Classificação
    # ============================================================

    def triplo_de_eta_einstein(self, referencial, metrica, xi: Vetorial, m: float) -> TriploQE:
        """Estrutura η-Einstein com ν/m > 0 vira o triplo X = √(νm)·ξ, λ ajustado."""
        lam, nu, residuo = self.verificar_eta_einstein(referencial, metrica, xi)
        if residuo > self.politica.precondicao_qe:
            raise ErroPrecondicao(f"❌ Estrutura não é η-Einstein (resíduo {residuo:.3e})")
        if not nu / m > 0:
            raise ErroPrecondicao(f"❌ ν/m = {nu / m:.6g} <= 0: não há X real")
        X = VetorReferencial(np.sqrt(nu * m) * coeficientes(xi))
        return TriploQE(referencial, metrica, X, m, lam)

    def classificar_thurston(self, triplo: TriploQE) -> ResultadoThurston:
        self._exigir_dim3(triplo.referencial)
        if triplo.eh_trivial():
            raise ErroSolucaoTrivial("❌ X = 0: solução trivial não tem balde de Thurston")
        self.qe.exigir_qe(triplo)

        geo = self._geometria(triplo.referencial, triplo.metrica)
        d_alfa = geo.diferencial_covetor(triplo.metrica.abaixar(triplo.X))
        if triplo.metrica.norma_tensor(d_alfa) <= self.politica.estrutural:
            return ResultadoThurston(GeometriaThurston.PRODUTO)

        sasaki = self.reescalar_para_sasaki(triplo)
        xi = sasaki.X.coefs / np.sqrt(sasaki.norma_x_quadrada)
        sasakiano, desvio = self.verificar_sasaki(sasaki.referencial, sasaki.metrica, xi)
        H = self.curvatura_phi_seccional(sasaki.referencial, sasaki.metrica, xi)
        lam, nu, _ = self.verificar_eta_einstein(sasaki.referencial, sasaki.metrica, xi)

        if abs(H + 3.0) <= self.politica.sasaki:
            geometria = GeometriaThurston.NIL
        elif H > -3.0:
            geometria = GeometriaThurston.ESFERICA
        else:
            geometria = GeometriaThurston.SL2_TIL

        return ResultadoThurston(
            geometria=geometria,
            H=H,
            sasakiano=sasakiano,
            desvio_sasaki=desvio,
            eta_einstein=(lam, nu),
            escala_sasaki=triplo.positividade / 2.0,
        )
