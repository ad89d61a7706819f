"""
Módulo: Resolvedor QE
Descoberta numérica de soluções quasi-Einstein num referencial fixo:
multistart determinístico (Halton embaralhado com semente) e Gauss-Newton
sobre o resíduo Ric + ½L_Xg - (1/m)X♭⊗X♭ - λg.

Parâmetros: log-métrica simétrica de traço nulo (det g = 1 fixa a escala,
que de outro modo seria uma direção livre da família g -> c²g, X -> X/c²),
coeficientes de X e λ.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.linalg
from scipy.optimize import bisect
from scipy.stats import qmc

from analise.quasi_einstein import AnalisadorQE, TriploQE
from analise.sasaki3 import AnalisadorSasaki3, GeometriaThurston
from fibrados.submersao import AnalisadorSubmersao, DadosSubmersao
from fibrados.variacao_canonica import EntradaVariacao, VariacaoCanonica
from geometria.referencial import MetricaReferencial, Referencial, VetorReferencial
from nucleo.erros import ErroEntrada, ErroGeometria, ErroParametro, ErroSemFamilia
from nucleo.politica import POLITICA_PADRAO, PoliticaNumerica
from otimizacao.gauss_newton import gauss_newton


PARAMETRIZACOES = ("diagonal", "full_spd")


# ============================================================
# Configuração e registros
# ============================================================

@dataclass(frozen=True)
class ConfiguracaoResolvedor:
    """
    Attributes:
        m: parâmetro da equação, não nulo
        parametrizacao: "diagonal" ou "full_spd"
        inicios: número de pontos de partida
        caixa: semilarguras da caixa de amostragem (log-métrica, X, λ)
        automorfismos: matrizes P de mudança de base que preservam os colchetes
        trabalhadores: > 1 executa as partidas num pool de threads
    """

    m: float
    parametrizacao: str = "diagonal"
    inicios: int = 64
    max_iteracoes: int = 100
    tol_convergencia: float = 1e-8
    tol_dedup: float = 1e-6
    semente: int = 7
    caixa: Tuple[float, float, float] = (1.0, 2.0, 3.0)
    automorfismos: Tuple[np.ndarray, ...] = field(default_factory=tuple)
    trabalhadores: int = 1

    def __post_init__(self):
        if self.m == 0 or not np.isfinite(self.m):
            raise ErroParametro(f"❌ Parâmetro m inválido: {self.m}")
        if self.parametrizacao not in PARAMETRIZACOES:
            raise ErroParametro(
                f"❌ Parametrização desconhecida: {self.parametrizacao} (use {PARAMETRIZACOES})"
            )
        if self.inicios < 1:
            raise ErroParametro(f"❌ inicios precisa ser >= 1: {self.inicios}")
        if self.max_iteracoes < 1:
            raise ErroParametro(f"❌ max_iteracoes precisa ser >= 1: {self.max_iteracoes}")
        if not (self.tol_convergencia > 0 and self.tol_dedup > 0):
            raise ErroParametro("❌ Tolerâncias do resolvedor precisam ser positivas")
        if len(self.caixa) != 3 or min(self.caixa) <= 0:
            raise ErroParametro(f"❌ Caixa inválida: {self.caixa}")
        if self.trabalhadores < 1:
            raise ErroParametro(f"❌ trabalhadores precisa ser >= 1: {self.trabalhadores}")


@dataclass
class RegistroSolucao:
    metrica: MetricaReferencial
    X: VetorReferencial
    lam: float
    residuo: float
    residuo_killing: float
    trivial: bool
    classificacao: Optional[GeometriaThurston] = None
    partida: int = -1

    def para_dict(self) -> Dict[str, Any]:
        return {
            "g": self.metrica.gram.tolist(),
            "X": self.X.coefs.tolist(),
            "lambda": self.lam,
            "residual": self.residuo,
            "killing_residual": self.residuo_killing,
            "classification": self.classificacao.value if self.classificacao else None,
            "trivial": self.trivial,
            "start": self.partida,
        }


@dataclass
class VarreduraSinal:
    tabela: pd.DataFrame
    t_zero: Optional[float]
    ancora: RegistroSolucao
    entrada: EntradaVariacao
    registros: List[RegistroSolucao] = field(default_factory=list)


# ============================================================
# Resolvedor
# ============================================================

class ResolvedorQE:
    """
    Busca multistart de triplos (g, X, λ).

    `relatorio` acumula as contagens da última execução, como na etapa de
    limpeza do pipeline: partidas, convergidas, rejeitadas por exclusão,
    duplicadas e abandonadas.
    """

    def __init__(self, politica: PoliticaNumerica = POLITICA_PADRAO):
        self.politica = politica
        self.qe = AnalisadorQE(politica)
        self.sasaki = AnalisadorSasaki3(politica)
        self.submersao = AnalisadorSubmersao(politica)
        self.variacao = VariacaoCanonica(politica)
        self.relatorio: Dict[str, Any] = {}

    # ============================================================
    # Parametrização
    # ============================================================

    @staticmethod
    def _tamanho_metrica(d: int, parametrizacao: str) -> int:
        if parametrizacao == "diagonal":
            return d - 1
        return d - 1 + d * (d - 1) // 2

    @staticmethod
    def _metrica(s: np.ndarray, d: int, parametrizacao: str) -> np.ndarray:
        """exp(S) com tr S = 0."""
        diagonal = np.append(s[: d - 1], -np.sum(s[: d - 1]))
        if parametrizacao == "diagonal":
            return np.diag(np.exp(diagonal))
        S = np.diag(diagonal)
        iu = np.triu_indices(d, k=1)
        S[iu] = s[d - 1:]
        S[(iu[1], iu[0])] = s[d - 1:]
        return scipy.linalg.expm(S)

    def _decodificar(self, p: np.ndarray, d: int, config: ConfiguracaoResolvedor, x_nulo: bool = False):
        """p = (log-métrica, X, λ); com x_nulo=True, p = (log-métrica, λ) e X = 0."""
        n_s = self._tamanho_metrica(d, config.parametrizacao)
        gram = self._metrica(p[:n_s], d, config.parametrizacao)
        x = np.zeros(d) if x_nulo else p[n_s: n_s + d]
        return gram, x, float(p[-1])

    def _vetor_residuo(self, referencial: Referencial, config: ConfiguracaoResolvedor, x_nulo: bool = False):
        """Triângulo superior do tensor QE no referencial ortonormal, fora da diagonal × √2."""
        d = referencial.dim
        iu = np.triu_indices(d)
        pesos = np.where(iu[0] == iu[1], 1.0, np.sqrt(2.0))

        def residuo(p: np.ndarray) -> np.ndarray:
            try:
                gram, x, lam = self._decodificar(p, d, config, x_nulo)
                triplo = TriploQE(referencial, MetricaReferencial(gram), x, config.m, lam)
                tensor, _ = self.qe.residuo_qe(triplo)
            except (ErroEntrada, np.linalg.LinAlgError, FloatingPointError):
                return np.full(iu[0].size, np.inf)
            ortonormal = triplo.metrica.componentes_ortonormais(tensor)
            return pesos * ortonormal[iu]

        return residuo

    def _partidas(self, d: int, config: ConfiguracaoResolvedor) -> np.ndarray:
        n_s = self._tamanho_metrica(d, config.parametrizacao)
        n = n_s + d + 1
        amostras = qmc.Halton(d=n, scramble=True, seed=config.semente).random(config.inicios)
        semilarguras = np.concatenate([
            np.full(n_s, config.caixa[0]),
            np.full(d, config.caixa[1]),
            [config.caixa[2]],
        ])
        return (2.0 * amostras - 1.0) * semilarguras

    # ============================================================
    # Uma partida
    # ============================================================

    @staticmethod
    def _limiar_trivial(config: ConfiguracaoResolvedor) -> float:
        return 10.0 * np.sqrt(config.tol_convergencia * max(1.0, abs(config.m)))

    def _executar_partida(
        self, referencial: Referencial, config: ConfiguracaoResolvedor, indice: int, p0: np.ndarray
    ) -> Tuple[int, Optional[RegistroSolucao], str]:
        residuo = self._vetor_residuo(referencial, config)
        resultado = gauss_newton(
            residuo, p0, max_iteracoes=config.max_iteracoes, tol=config.tol_convergencia
        )
        if not resultado.convergiu:
            return indice, None, resultado.motivo

        # refino curto: o classificador exige Killing na tolerância estrutural
        refinado = gauss_newton(residuo, resultado.x, max_iteracoes=5, tol=1e-4 * config.tol_convergencia)
        p = refinado.x if refinado.norma < resultado.norma else resultado.x

        d = referencial.dim
        gram, x, _ = self._decodificar(p, d, config)
        metrica = MetricaReferencial(gram)

        # perto de X = 0 o resíduo é quadrático em X: |X| ~ √tol ainda converge
        trivial = np.sqrt(metrica.norma_quadrada(x)) <= self._limiar_trivial(config)
        if trivial:
            n_s = self._tamanho_metrica(d, config.parametrizacao)
            polido = gauss_newton(
                self._vetor_residuo(referencial, config, x_nulo=True),
                np.append(p[:n_s], p[-1]),
                max_iteracoes=config.max_iteracoes,
                tol=config.tol_convergencia,
            )
            if not polido.convergiu:
                return indice, None, "trivial_sem_polimento"
            gram, x, _ = self._decodificar(polido.x, d, config, x_nulo=True)
            metrica = MetricaReferencial(gram)

        lam, norma = self.qe.ajustar_lambda(referencial, metrica, x, config.m)
        if not np.isfinite(norma) or norma > config.tol_convergencia:
            return indice, None, "residuo_apos_ajuste"
        if not self.qe.verificar_exclusao(config.m, lam):
            return indice, None, "exclusao"

        triplo = TriploQE(referencial, metrica, x, config.m, lam)
        relatorio = self.qe.relatorio(triplo)

        classificacao = None
        if referencial.dim == 3 and not trivial:
            try:
                classificacao = self.sasaki.classificar_thurston(triplo).geometria
            except ErroGeometria:
                classificacao = None

        registro = RegistroSolucao(
            metrica=metrica,
            X=triplo.X,
            lam=lam,
            residuo=norma,
            residuo_killing=relatorio.residuo_killing,
            trivial=trivial,
            classificacao=classificacao,
            partida=indice,
        )
        return indice, registro, "convergiu"

    # ============================================================
    # Deduplicação
    # ============================================================

    @staticmethod
    def _normalizado(gram: np.ndarray, x: np.ndarray, lam: float):
        """Representante com det g = 1 da órbita g -> c²g, X -> X/c², λ -> λ/c²."""
        f = np.linalg.det(gram) ** (1.0 / gram.shape[0])
        return gram / f, x * f, lam * f

    def _duplicado(self, a: RegistroSolucao, b: RegistroSolucao, config: ConfiguracaoResolvedor) -> bool:
        d = a.metrica.dim
        gb, xb, lb = self._normalizado(b.metrica.gram, b.X.coefs, b.lam)
        for P in (np.eye(d),) + tuple(config.automorfismos):
            P = np.asarray(P, dtype=float)
            ga, xa, la = self._normalizado(P.T @ a.metrica.gram @ P, np.linalg.solve(P, a.X.coefs), a.lam)
            desvio = max(
                float(np.max(np.abs(ga - gb))),
                float(np.max(np.abs(xa - xb), initial=0.0)),
                abs(la - lb),
            )
            escala = max(1.0, float(np.max(np.abs(gb))), abs(lb))
            if desvio <= config.tol_dedup * escala:
                return True
        return False

    # ============================================================
    # API
    # ============================================================

    def resolver(self, referencial: Referencial, config: ConfiguracaoResolvedor) -> List[RegistroSolucao]:
        partidas = self._partidas(referencial.dim, config)
        tarefas = list(enumerate(partidas))

        if config.trabalhadores > 1:
            with ThreadPoolExecutor(max_workers=config.trabalhadores) as pool:
                resultados = list(pool.map(
                    lambda tarefa: self._executar_partida(referencial, config, *tarefa), tarefas
                ))
        else:
            resultados = [self._executar_partida(referencial, config, i, p0) for i, p0 in tarefas]
        resultados.sort(key=lambda item: item[0])

        registros: List[RegistroSolucao] = []
        motivos: Dict[str, int] = {}
        duplicados = 0
        for _, registro, motivo in resultados:
            motivos[motivo] = motivos.get(motivo, 0) + 1
            if registro is None:
                continue
            if any(self._duplicado(registro, r, config) for r in registros):
                duplicados += 1
                continue
            registros.append(registro)

        self.relatorio = {
            "inicios": config.inicios,
            "convergidos": motivos.get("convergiu", 0),
            "rejeitados_exclusao": motivos.get("exclusao", 0),
            "duplicados": duplicados,
            "abandonados": config.inicios - motivos.get("convergiu", 0) - motivos.get("exclusao", 0),
            "registros": len(registros),
            "triviais": sum(r.trivial for r in registros),
            "motivos": motivos,
        }
        return registros

    # -------------------------------------------------------------
    def _ancora(
        self, referencial: Referencial, registros: Sequence[RegistroSolucao]
    ) -> Optional[Tuple[RegistroSolucao, DadosSubmersao]]:
        """Triviais primeiro (cada direção da base como vertical), depois X/|X|."""
        candidatos = []
        for registro in registros:
            if registro.trivial:
                candidatos.extend((registro, i) for i in range(referencial.dim))
        for registro in registros:
            if not registro.trivial:
                candidatos.append((registro, registro.X))

        for registro, vertical in candidatos:
            try:
                sd = self.submersao.construir(referencial, registro.metrica, vertical)
            except ErroGeometria:
                continue
            if sd.norma_a_quadrada <= self.politica.estrutural:
                continue
            return registro, sd
        return None

    def varrer_sinal_lambda(
        self,
        referencial: Referencial,
        config: ConfiguracaoResolvedor,
        grade: Sequence[float],
    ) -> VarreduraSinal:
        """
        Tabela (t, λ_t, sinal) ao longo da variação canônica ancorada numa
        solução descoberta, e o zero t₀ de λ_t por bisseção.

        Se a família tem ponto de Einstein t*, ela é reparametrizada a partir
        de g_{t*} (X = 0), de modo que t = 1 é a métrica de Einstein.
        """
        registros = self.resolver(referencial, config)
        achado = self._ancora(referencial, registros)
        if achado is None:
            raise ErroSemFamilia(
                "❌ Nenhuma solução admite variação canônica (|A|² = 0 em todas as direções)"
            )
        ancora, sd = achado
        x2 = ancora.metrica.norma_quadrada(ancora.X)
        vi = self.variacao.entrada_de_submersao(sd, x2, config.m)

        t_estrela = self.variacao.ponto_einstein(vi)
        if x2 > 0 and t_estrela is not None:
            metrica = self.variacao.metrica_escalada(sd, t_estrela)
            sd = self.submersao.construir(referencial, metrica, sd.vertical)
            vi = self.variacao.entrada_de_submersao(sd, 0.0, config.m)

        linhas = []
        for t in grade:
            lam_t = self.variacao.lambda_t(vi, t)
            sinal = 0 if abs(lam_t) <= self.politica.estrutural else int(np.sign(lam_t))
            linhas.append({"t": float(t), "lambda_t": lam_t, "sign": sinal})
        tabela = pd.DataFrame(linhas, columns=["t", "lambda_t", "sign"])

        t_zero = None
        inclinacao = -2.0 * vi.norma_a_quadrada / (vi.n - 1)
        t_linear = 1.0 - self.variacao.lambda_t(vi, 1.0) / inclinacao
        if t_linear > 0:
            t_zero = float(bisect(
                lambda t: self.variacao.lambda_t(vi, t), t_linear / 2.0, 2.0 * t_linear, xtol=1e-14
            ))
        return VarreduraSinal(tabela=tabela, t_zero=t_zero, ancora=ancora, entrada=vi, registros=registros)
