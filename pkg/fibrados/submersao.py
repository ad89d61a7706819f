"""
Módulo: Submersão
Submersão riemanniana com fibras S¹ totalmente geodésicas, no nível do
referencial: tensor A de O'Neill, 2-forma ω, condição de Yang-Mills,
condições quasi-Einstein da submersão e a estrutura quase-Kähler da base.

A base nunca é construída: todas as grandezas da base vivem no subespaço
horizontal do referencial total, escritas numa base g-ortonormal h_1..h_{d-1}.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np

from geometria.curvatura import GeometriaReferencial
from geometria.referencial import MetricaReferencial, Referencial, VetorReferencial, Vetorial, coeficientes
from nucleo.erros import (
    ErroDimensao,
    ErroEntrada,
    ErroEstruturaDegenerada,
    ErroFibraNaoGeodesica,
    ErroFibracaoInvalida,
    ErroHipoteseVertical,
    ErroInvariante,
    ErroParametro,
    ErroPrecondicao,
)
from nucleo.politica import POLITICA_PADRAO, PoliticaNumerica


# ============================================================
# Tipos
# ============================================================

@dataclass(frozen=True, eq=False)
class DadosSubmersao:
    """
    Dados da submersão no referencial adaptado E = (U, h_1, ..., h_{d-1}).

    Attributes:
        vertical: U, unitário em g
        base: linhas h_a, base g-ortonormal do espaço horizontal
        tensor_a: tensor_a[a, b, c] = g(A_{h_a} E_b, E_c)
        omega: ω(h_a, h_b) = -2 g(A_{h_a} h_b, U)
        ricci_base: Řic(h_a, h_b) = Ric(h_a, h_b) + 2 g(A_{h_a}, A_{h_b})
        ricci_adaptado: Ric(E_a, E_b)
        gram_a: g(A_{h_a}, A_{h_b}) = Σ_c g(A_{h_a} h_c, A_{h_b} h_c)
        a_vertical: g(AU, AU) = Σ_a |A_{h_a} U|²
        avisos: violações registradas numa construção não estrita
    """

    referencial: Referencial
    metrica: MetricaReferencial
    vertical: VetorReferencial
    base: np.ndarray
    tensor_a: np.ndarray
    omega: np.ndarray
    ricci_base: np.ndarray
    norma_a_quadrada: float
    norma_omega_quadrada: float
    ricci_adaptado: np.ndarray
    gram_a: np.ndarray
    a_vertical: float
    avisos: List[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.referencial.dim

    @property
    def dim_base(self) -> int:
        return self.referencial.dim - 1

    @property
    def a_horizontal(self) -> np.ndarray:
        """g(A_{h_a} h_b, U)."""
        return self.tensor_a[:, 1:, 0]

    @property
    def ricci_misto(self) -> np.ndarray:
        """Ric(h_a, U)."""
        return self.ricci_adaptado[0, 1:]

    @property
    def escalar_base(self) -> float:
        return float(np.trace(self.ricci_base))

    def para_dict(self) -> Dict[str, Any]:
        return {
            "vertical": self.vertical.coefs.tolist(),
            "a_norm_sq": self.norma_a_quadrada,
            "omega": self.omega.tolist(),
            "omega_norm_sq": self.norma_omega_quadrada,
            "base_ricci": self.ricci_base.tolist(),
            "base_scal": self.escalar_base,
            "warnings": list(self.avisos),
        }


@dataclass
class RelatorioSubmersaoQE:
    """Condições da submersão quasi-Einstein, cada uma com seu resíduo."""

    lam: float
    yang_mills: bool
    residuo_yang_mills: float
    norma_a: bool
    residuo_norma_a: float
    horizontal: bool
    residuo_horizontal: float
    traco: bool
    residuo_traco: float

    @property
    def aprovado(self) -> bool:
        return self.yang_mills and self.norma_a and self.horizontal and self.traco

    def para_dict(self) -> Dict[str, Any]:
        return {
            "lambda": self.lam,
            "yang_mills": {"ok": self.yang_mills, "residual": self.residuo_yang_mills},
            "a_norm": {"ok": self.norma_a, "residual": self.residuo_norma_a},
            "horizontal": {"ok": self.horizontal, "residual": self.residuo_horizontal},
            "trace": {"ok": self.traco, "residual": self.residuo_traco},
            "passed": self.aprovado,
        }


@dataclass
class RelatorioOmega:
    """ω cofechada e a identidade de Einstein escrita em termos de ω."""

    cofechada: bool
    residuo_cofechada: float
    identidade: bool
    residuo_identidade: float

    @property
    def aprovado(self) -> bool:
        return self.cofechada and self.identidade

    def para_dict(self) -> Dict[str, Any]:
        return {
            "coclosed": {"ok": self.cofechada, "residual": self.residuo_cofechada},
            "identity": {"ok": self.identidade, "residual": self.residuo_identidade},
            "passed": self.aprovado,
        }


@dataclass
class EstruturaQuaseKahler:
    """J com ω(Y, Z) = ǧ(JY, Z); J_normalizado = J/κ satisfaz J² = -I."""

    J: Optional[np.ndarray]
    kappa: Optional[float]
    J_normalizado: Optional[np.ndarray]
    produto_trivial: bool = False

    def para_dict(self) -> Dict[str, Any]:
        return {
            "J": None if self.J is None else self.J.tolist(),
            "kappa": self.kappa,
            "J_normalized": None if self.J_normalizado is None else self.J_normalizado.tolist(),
            "trivial_product": self.produto_trivial,
        }


# ============================================================
# Analisador
# ============================================================

class AnalisadorSubmersao:
    """Constrói e verifica submersões com fibras S¹."""

    def __init__(self, politica: PoliticaNumerica = POLITICA_PADRAO):
        self.politica = politica

    # -------------------------------------------------------------
    def _direcao_vertical(self, dim: int, vertical: Union[int, Vetorial]) -> np.ndarray:
        if isinstance(vertical, (int, np.integer)):
            if not 0 <= vertical < dim:
                raise ErroEntrada(f"❌ Índice vertical fora do intervalo: {vertical}")
            return VetorReferencial.base(dim, int(vertical)).coefs
        v = coeficientes(vertical)
        if v.shape != (dim,):
            raise ErroEntrada(f"❌ Direção vertical com forma {v.shape}, esperado ({dim},)")
        return v

    def _registrar(self, avisos: List[str], estrito: bool, erro: type, mensagem: str) -> None:
        if estrito:
            raise erro(mensagem)
        avisos.append(mensagem.replace("❌", "⚠️", 1))

    # ============================================================
    # Construção
    # ============================================================

    def construir(
        self,
        referencial: Referencial,
        metrica: MetricaReferencial,
        vertical: Union[int, Vetorial],
        estrito: bool = True,
    ) -> DadosSubmersao:
        """
        Monta A, ω e Řic a partir da conexão.

        Com estrito=False, uma direção vertical que não é Killing ou cujas
        curvas integrais não são geodésicas é aceita e a violação fica em
        `avisos`; os tensores são então apenas as fórmulas avaliadas.
        """
        d = referencial.dim
        if d < 2:
            raise ErroDimensao(f"❌ Submersão exige d >= 2 (d = {d})")
        geo = GeometriaReferencial(referencial, metrica, self.politica)

        v = self._direcao_vertical(d, vertical)
        norma = np.sqrt(metrica.norma_quadrada(v))
        if norma <= self.politica.validacao:
            raise ErroEntrada("❌ Direção vertical nula")
        u = v / norma

        avisos: List[str] = []
        killing, residuo = geo.eh_killing(u)
        if not killing:
            self._registrar(
                avisos, estrito, ErroFibracaoInvalida,
                f"❌ Direção vertical não é Killing (|L_U g| = {residuo:.3e})",
            )
        nabla_uu = np.sqrt(metrica.norma_quadrada(geo.derivada_covariante(u, u)))
        if nabla_uu > self.politica.estrutural:
            self._registrar(
                avisos, estrito, ErroFibraNaoGeodesica,
                f"❌ Fibras não são geodésicas (|∇_U U| = {nabla_uu:.3e})",
            )

        H = metrica.complemento_ortonormal(u)
        E = np.vstack([u, H])

        # comp[a, b, c] = g(∇_{E_a} E_b, E_c)
        nabla = np.einsum("ai,bj,ijk->abk", E, E, geo.gamma)
        comp = np.einsum("abk,kl,cl->abc", nabla, metrica.gram, E)

        tensor_a = np.zeros((d - 1, d, d))
        tensor_a[:, 1:, 0] = comp[1:, 1:, 0]
        tensor_a[:, 0, 1:] = comp[1:, 0, 1:]

        a_h = tensor_a[:, 1:, 0]
        omega = -(a_h - a_h.T)
        gram_a = a_h @ a_h.T
        ricci_adaptado = E @ geo.ricci @ E.T
        ricci_base = ricci_adaptado[1:, 1:] + 2.0 * gram_a

        dados = DadosSubmersao(
            referencial=referencial,
            metrica=metrica,
            vertical=VetorReferencial(u),
            base=H,
            tensor_a=tensor_a,
            omega=omega,
            ricci_base=0.5 * (ricci_base + ricci_base.T),
            norma_a_quadrada=float(np.sum(a_h ** 2)),
            norma_omega_quadrada=float(np.sum(omega ** 2)),
            ricci_adaptado=ricci_adaptado,
            gram_a=gram_a,
            a_vertical=float(np.sum(tensor_a[:, 0, 1:] ** 2)),
            avisos=avisos,
        )
        if not avisos:
            self._validar(dados)
        return dados

    def _validar(self, sd: DadosSubmersao) -> None:
        tol = self.politica.estrutural * max(1.0, sd.norma_a_quadrada)
        A = sd.tensor_a
        if np.max(np.abs(A + A.transpose(0, 2, 1)), initial=0.0) > tol:
            raise ErroInvariante("❌ A_Y não é antissimétrico")
        if np.max(np.abs(sd.a_horizontal + 0.5 * sd.omega), initial=0.0) > tol:
            raise ErroInvariante("❌ A_Y Z ≠ -½ω(Y, Z)U")
        if abs(sd.norma_omega_quadrada - 4.0 * sd.norma_a_quadrada) > tol:
            raise ErroInvariante(
                f"❌ |ω|² = {sd.norma_omega_quadrada:.12g} ≠ 4|A|² = {4 * sd.norma_a_quadrada:.12g}"
            )

    # ============================================================
    # Verificações
    # ============================================================

    def verificar_yang_mills(self, sd: DadosSubmersao):
        """Ric(h_a, U) = 0 para todo a."""
        residuo = float(np.max(np.abs(sd.ricci_misto), initial=0.0))
        return residuo <= self.politica.estrutural, residuo

    def norma_x_vertical(self, sd: DadosSubmersao, X: Vetorial) -> float:
        """|X|², exigindo X tangente às fibras."""
        x = coeficientes(X)
        u = sd.vertical.coefs
        componente = sd.metrica.produto(x, u)
        perpendicular = x - componente * u
        norma_perp = np.sqrt(max(sd.metrica.norma_quadrada(perpendicular), 0.0))
        if norma_perp > self.politica.estrutural * max(1.0, abs(componente)):
            raise ErroHipoteseVertical(
                f"❌ X não é tangente às fibras (componente horizontal {norma_perp:.3e})"
            )
        return componente ** 2

    @staticmethod
    def _validar_m(m: float) -> float:
        if m == 0 or not np.isfinite(m):
            raise ErroParametro(f"❌ Parâmetro m inválido: {m}")
        return float(m)

    def verificar_qe_submersao(
        self,
        sd: DadosSubmersao,
        m: float,
        X: Vetorial,
        lam: Optional[float] = None,
    ) -> RelatorioSubmersaoQE:
        """
        Yang-Mills, |A|² = λ + |X|²/m, Řic - 2g(A,A) = λǧ e o traço
        š - 2|A|² = λ(d - 1).

        Sem λ explícito usa-se λ = |A|² - |X|²/m.
        """
        m = self._validar_m(m)
        x2 = self.norma_x_vertical(sd, X)
        if lam is None:
            lam = sd.norma_a_quadrada - x2 / m
        tol = self.politica.estrutural

        ym, residuo_ym = self.verificar_yang_mills(sd)
        residuo_a = abs(sd.norma_a_quadrada - lam - x2 / m)
        identidade = np.eye(sd.dim_base)
        residuo_h = float(np.max(
            np.abs(sd.ricci_base - 2.0 * sd.gram_a - lam * identidade), initial=0.0
        ))
        residuo_traco = abs(
            sd.escalar_base - 2.0 * sd.norma_a_quadrada - lam * sd.dim_base
        )

        escala = max(1.0, abs(lam), sd.norma_a_quadrada)
        return RelatorioSubmersaoQE(
            lam=float(lam),
            yang_mills=ym,
            residuo_yang_mills=residuo_ym,
            norma_a=residuo_a <= tol * escala,
            residuo_norma_a=float(residuo_a),
            horizontal=residuo_h <= tol * escala,
            residuo_horizontal=residuo_h,
            traco=residuo_traco <= tol * escala * sd.dim_base,
            residuo_traco=float(residuo_traco),
        )

    def verificar_forma_omega(
        self,
        sd: DadosSubmersao,
        m: float,
        X: Vetorial,
        base: Union[None, float, np.ndarray] = None,
    ) -> RelatorioOmega:
        """
        (a) ω cofechada, pela equivalência com Ric misto nulo;
        (b) Řic - ½g(ω_Y, ω_Z) = (|ω|²/4 - |X|²/m)ǧ.

        `base` pode ser λ̌ (base Einstein), a matriz de Řic, ou None para o
        Řic calculado.
        """
        m = self._validar_m(m)
        x2 = self.norma_x_vertical(sd, X)
        identidade = np.eye(sd.dim_base)

        if base is None:
            ricci_base = sd.ricci_base
        elif np.ndim(base) == 0:
            ricci_base = float(base) * identidade
        else:
            ricci_base = np.asarray(base, dtype=float)
            if ricci_base.shape != identidade.shape:
                raise ErroEntrada(f"❌ Řic com forma {ricci_base.shape}")

        cofechada, residuo_c = self.verificar_yang_mills(sd)
        omega_omega = sd.omega @ sd.omega.T
        lado = ricci_base - 0.5 * omega_omega
        alvo = (sd.norma_omega_quadrada / 4.0 - x2 / m) * identidade
        residuo = float(np.max(np.abs(lado - alvo), initial=0.0))

        escala = max(1.0, sd.norma_a_quadrada, x2 / abs(m))
        return RelatorioOmega(
            cofechada=cofechada,
            residuo_cofechada=residuo_c,
            identidade=residuo <= self.politica.estrutural * escala,
            residuo_identidade=residuo,
        )

    # ============================================================
    # Estrutura quase-Kähler
    # ============================================================

    def lambda_base_einstein(self, sd: DadosSubmersao) -> float:
        """λ̌ com Řic = λ̌ǧ; erro se a base não é Einstein."""
        lam = sd.escalar_base / sd.dim_base
        residuo = float(np.max(np.abs(sd.ricci_base - lam * np.eye(sd.dim_base)), initial=0.0))
        if residuo > self.politica.precondicao_qe:
            raise ErroPrecondicao(f"❌ Base não é Einstein (resíduo {residuo:.3e})")
        return lam

    def estrutura_quase_kahler(
        self,
        sd: DadosSubmersao,
        m: float,
        norma_x_quadrada: float,
        lambda_base: Optional[float] = None,
    ) -> EstruturaQuaseKahler:
        """
        J definido por ω(Y, Z) = ǧ(JY, Z), normalizado por
        κ = √(2λ̌ - |ω|²/2 + 2|X|²/m).

        λ̌ + |X|²/m = 0 devolve a marca de produto trivial B × S¹.
        """
        m = self._validar_m(m)
        if sd.dim_base % 2 != 0:
            raise ErroDimensao(
                f"❌ Base de dimensão ímpar ({sd.dim_base}) não admite estrutura quase-Kähler"
            )
        if lambda_base is None:
            lambda_base = self.lambda_base_einstein(sd)

        tol = self.politica.estrutural
        valor = lambda_base + norma_x_quadrada / m
        if abs(valor) <= tol:
            return EstruturaQuaseKahler(None, None, None, produto_trivial=True)
        if valor < 0:
            raise ErroPrecondicao(f"❌ λ̌ + |X|²/m = {valor:.6g} < 0")

        kappa2 = 2.0 * lambda_base - sd.norma_omega_quadrada / 2.0 + 2.0 * norma_x_quadrada / m
        if kappa2 <= tol:
            raise ErroEstruturaDegenerada(f"❌ κ² = {kappa2:.6g} <= 0")
        kappa = float(np.sqrt(kappa2))

        J = sd.omega.T.copy()
        J_norm = J / kappa
        desvio = float(np.max(np.abs(J_norm @ J_norm + np.eye(sd.dim_base))))
        if desvio > tol:
            raise ErroInvariante(f"❌ J'² ≠ -I (desvio {desvio:.3e})")
        return EstruturaQuaseKahler(J, kappa, J_norm)
