"""
Módulo: Variação Canônica
Família g_t que escala a fibra por t mantendo a métrica horizontal, e a
família quasi-Einstein associada (X_t = c_t·U, λ_t).

n é a dimensão do espaço total: o traço horizontal contribui com (n - 1).
Com essa leitura, os dados de Hopf reproduzem c_t = √(4m(t - 1)/t).
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from analise.quasi_einstein import AnalisadorQE, TriploQE
from fibrados.submersao import AnalisadorSubmersao, DadosSubmersao
from geometria.curvatura import GeometriaReferencial
from geometria.referencial import MetricaReferencial, Referencial, VetorReferencial, Vetorial
from nucleo.erros import ErroDimensao, ErroParametro, ErroPrecondicao
from nucleo.politica import POLITICA_PADRAO, PoliticaNumerica


STATUS_OK = "ok"
STATUS_INADMISSIVEL = "inadmissible"
STATUS_NAO_QE = "not_qe"

COLUNAS_TABELA = ["t", "c_t", "lambda_t", "residual", "scal", "status"]


# ============================================================
# Tipos
# ============================================================

@dataclass(frozen=True)
class EntradaVariacao:
    """|A|², |X|² em t = 1, m, n = dim M e, se a base é Einstein, λ̌."""

    norma_a_quadrada: float
    norma_x_quadrada: float
    m: float
    n: int
    lambda_base: Optional[float] = None

    def __post_init__(self):
        if self.n < 3:
            raise ErroDimensao(f"❌ Variação canônica exige n >= 3 (n = {self.n})")
        if self.m == 0 or not math.isfinite(self.m):
            raise ErroParametro(f"❌ Parâmetro m inválido: {self.m}")
        if self.norma_a_quadrada < 0:
            raise ErroParametro(f"❌ |A|² negativo: {self.norma_a_quadrada}")
        if self.norma_x_quadrada < 0:
            raise ErroParametro(f"❌ |X|² negativo: {self.norma_x_quadrada}")

    @property
    def k(self) -> float:
        """(n + 1)|A|²/(n - 1)."""
        return (self.n + 1) * self.norma_a_quadrada / (self.n - 1)


@dataclass
class PontoVariacao:
    t: float
    c_t: Optional[float]
    lambda_t: float
    ricci_vertical: float
    deslocamento_horizontal: float
    residuo: Optional[float] = None
    escalar: Optional[float] = None
    status: str = STATUS_OK

    @property
    def definido(self) -> bool:
        return self.c_t is not None

    def para_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "c_t": self.c_t,
            "lambda_t": self.lambda_t,
            "residual": self.residuo,
            "scal": self.escalar,
            "status": self.status,
        }


@dataclass(frozen=True)
class IntervaloAdmissivel:
    """Conjunto {t > 0 : c_t real}; inferior = 0 significa (0, ...)."""

    inferior: float
    superior: float
    fechado_inferior: bool
    fechado_superior: bool

    def contem(self, t: float, tol: float = 0.0) -> bool:
        if t <= 0:
            return False
        if self.fechado_inferior:
            acima = t >= self.inferior - tol
        else:
            acima = t > self.inferior
        if self.fechado_superior:
            abaixo = t <= self.superior + tol
        else:
            abaixo = t < self.superior
        return acima and abaixo

    def __str__(self) -> str:
        esquerda = "[" if self.fechado_inferior else "("
        direita = "]" if self.fechado_superior else ")"
        return f"{esquerda}{self.inferior:g}, {self.superior:g}{direita}"


@dataclass
class BlocosRicci:
    """Ric_t no referencial adaptado (U, h_1, ...), U unitário em g."""

    t: float
    vertical: float
    horizontal: np.ndarray
    misto: np.ndarray
    desvio_direto: Optional[float] = None

    def como_matriz(self) -> np.ndarray:
        d = self.horizontal.shape[0] + 1
        R = np.zeros((d, d))
        R[0, 0] = self.vertical
        R[1:, 1:] = self.horizontal
        R[0, 1:] = self.misto
        R[1:, 0] = self.misto
        return R


# ============================================================
# Família
# ============================================================

class VariacaoCanonica:
    """
    Fórmulas fechadas da família e a verificação direta pela curvatura.

    `relatorio` guarda os avisos da última varredura (base não Einstein,
    triplo de partida que não é QE, construção não estrita).
    """

    def __init__(self, politica: PoliticaNumerica = POLITICA_PADRAO):
        self.politica = politica
        self.qe = AnalisadorQE(politica)
        self.submersao = AnalisadorSubmersao(politica)
        self.relatorio: Dict[str, Any] = {}

    @staticmethod
    def _validar_t(t: float) -> float:
        if not t > 0 or not math.isfinite(t):
            raise ErroParametro(f"❌ Parâmetro t precisa ser positivo: {t}")
        return float(t)

    # ============================================================
    # Ricci da família
    # ============================================================

    def metrica_escalada(self, sd: DadosSubmersao, t: float) -> MetricaReferencial:
        """g_t = g + (t - 1)U♭⊗U♭."""
        t = self._validar_t(t)
        u_baixo = sd.metrica.abaixar(sd.vertical)
        return MetricaReferencial(sd.metrica.gram + (t - 1.0) * np.outer(u_baixo, u_baixo))

    def ricci_t(self, sd: DadosSubmersao, t: float, conferir: bool = True) -> BlocosRicci:
        """
        Vertical t²g(AU, AU), horizontal Řic - 2t g(A_Y, A_Z), misto t·Ric(Y, U).

        Com conferir=True compara os blocos com o Ricci da métrica escalada
        calculado diretamente e guarda o maior desvio.
        """
        t = self._validar_t(t)
        blocos = BlocosRicci(
            t=t,
            vertical=t * t * sd.a_vertical,
            horizontal=sd.ricci_base - 2.0 * t * sd.gram_a,
            misto=t * sd.ricci_misto,
        )
        if conferir:
            geo = GeometriaReferencial(sd.referencial, self.metrica_escalada(sd, t), self.politica)
            E = np.vstack([sd.vertical.coefs, sd.base])
            direto = E @ geo.ricci @ E.T
            blocos.desvio_direto = float(np.max(np.abs(direto - blocos.como_matriz())))
        return blocos

    # ============================================================
    # Coeficientes
    # ============================================================

    def _radicando(self, vi: EntradaVariacao, t: float) -> float:
        return vi.norma_x_quadrada / t + vi.m * (t - 1.0) * vi.k / t

    def coeficiente_c(self, vi: EntradaVariacao, t: float) -> Optional[float]:
        """c_t = √(|X|²/t + m(t - 1)(n + 1)|A|²/(t(n - 1))), None fora do domínio."""
        t = self._validar_t(t)
        radicando = self._radicando(vi, t)
        escala = max(1.0, vi.norma_x_quadrada, abs(vi.m) * vi.k)
        if radicando < -self.politica.validacao * escala:
            return None
        return math.sqrt(max(radicando, 0.0))

    def lambda_t(self, vi: EntradaVariacao, t: float) -> float:
        """λ_t = t|A|² - |X|²/m - (t - 1)(n + 1)|A|²/(n - 1)."""
        t = self._validar_t(t)
        return t * vi.norma_a_quadrada - vi.norma_x_quadrada / vi.m - (t - 1.0) * vi.k

    def _t_minimo(self, vi: EntradaVariacao) -> float:
        return 1.0 - vi.norma_x_quadrada / (vi.m * vi.k)

    def intervalo_admissivel(self, vi: EntradaVariacao) -> IntervaloAdmissivel:
        if vi.norma_a_quadrada <= self.politica.estrutural:
            # A = 0: c_t = |X|/√t para todo t
            return IntervaloAdmissivel(0.0, math.inf, False, False)
        t_min = self._t_minimo(vi)
        if vi.m > 0:
            if t_min <= 0:
                return IntervaloAdmissivel(0.0, math.inf, False, False)
            return IntervaloAdmissivel(t_min, math.inf, True, False)
        return IntervaloAdmissivel(0.0, t_min, False, True)

    def ponto_einstein(self, vi: EntradaVariacao) -> Optional[float]:
        """t* com c_{t*} = 0, quando t* > 0."""
        if vi.norma_a_quadrada <= self.politica.estrutural:
            return None
        t_estrela = self._t_minimo(vi)
        return t_estrela if t_estrela > 0 else None

    @staticmethod
    def lambda_base(vi: EntradaVariacao) -> float:
        """λ̌ = (n + 1)|A|²/(n - 1) - |X|²/m."""
        return vi.k - vi.norma_x_quadrada / vi.m

    def entrada_de_submersao(
        self, sd: DadosSubmersao, norma_x_quadrada: float, m: float
    ) -> EntradaVariacao:
        """λ̌ preenchido só quando Řic é múltiplo de ǧ."""
        try:
            lambda_base = self.submersao.lambda_base_einstein(sd)
        except ErroPrecondicao:
            lambda_base = None
        return EntradaVariacao(
            norma_a_quadrada=sd.norma_a_quadrada,
            norma_x_quadrada=float(norma_x_quadrada),
            m=float(m),
            n=sd.dim,
            lambda_base=lambda_base,
        )

    # ============================================================
    # Varredura
    # ============================================================

    def verificar_familia(
        self,
        referencial: Referencial,
        metrica: MetricaReferencial,
        vertical: Union[int, Vetorial],
        m: float,
        grade: Sequence[float],
        norma_x: float = 0.0,
        estrito: bool = False,
    ) -> List[PontoVariacao]:
        """
        Para cada t da grade: g_t, X_t = c_t·U, λ_t e o resíduo QE calculado
        pela curvatura de g_t. Pontos fora do intervalo admissível ficam
        marcados como "inadmissible".

        `norma_x` é |X| em t = 1 (X = norma_x·U).
        """
        sd = self.submersao.construir(referencial, metrica, vertical, estrito=estrito)
        vi = self.entrada_de_submersao(sd, norma_x ** 2, m)
        U = sd.vertical.coefs

        avisos = list(sd.avisos)
        partida = TriploQE(referencial, metrica, VetorReferencial(norma_x * U), m, self.lambda_t(vi, 1.0))
        _, residuo_partida = self.qe.residuo_qe(partida)
        if residuo_partida > self.politica.precondicao_qe:
            avisos.append(f"⚠️ Triplo em t = 1 não é quasi-Einstein (resíduo {residuo_partida:.3e})")
        if vi.lambda_base is None:
            avisos.append("⚠️ Base não é Einstein: a família só é quasi-Einstein em t = 1")

        pontos = []
        for t in grade:
            t = self._validar_t(t)
            c_t = self.coeficiente_c(vi, t)
            ponto = PontoVariacao(
                t=t,
                c_t=c_t,
                lambda_t=self.lambda_t(vi, t),
                ricci_vertical=t * t * sd.a_vertical,
                deslocamento_horizontal=2.0 * t,
            )
            if c_t is None:
                ponto.status = STATUS_INADMISSIVEL
                pontos.append(ponto)
                continue

            g_t = self.metrica_escalada(sd, t)
            triplo = TriploQE(referencial, g_t, VetorReferencial(c_t * U), m, ponto.lambda_t)
            _, ponto.residuo = self.qe.residuo_qe(triplo)
            ponto.escalar = GeometriaReferencial(referencial, g_t, self.politica).escalar
            if ponto.residuo > self.politica.precondicao_qe:
                ponto.status = STATUS_NAO_QE
            pontos.append(ponto)

        self.relatorio = {
            "entrada": vi,
            "intervalo": self.intervalo_admissivel(vi),
            "ponto_einstein": self.ponto_einstein(vi),
            "avisos": avisos,
            "pontos": len(pontos),
            "inadmissiveis": sum(p.status == STATUS_INADMISSIVEL for p in pontos),
            "nao_qe": sum(p.status == STATUS_NAO_QE for p in pontos),
        }
        return pontos

    @staticmethod
    def tabela(pontos: Sequence[PontoVariacao]) -> pd.DataFrame:
        """DataFrame com as colunas do CSV; c_t indefinido vira NaN."""
        linhas = [p.para_dict() for p in pontos]
        df = pd.DataFrame(linhas, columns=COLUNAS_TABELA)
        for coluna in ["t", "c_t", "lambda_t", "residual", "scal"]:
            df[coluna] = pd.to_numeric(df[coluna], errors="coerce")
        return df
