"""
Módulo: Analisador de Geometria
Orquestra cada comando: carrega o problema, chama as análises e monta o
relatório. As mensagens de progresso vão para stderr (stdout fica com o
JSON/CSV).
"""

import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from analise.quasi_einstein import AnalisadorQE, TriploQE
from analise.sasaki3 import AnalisadorSasaki3
from dados.carregador import ArquivoProblema, CarregadorProblema
from dados.catalogo import CatalogoExemplos
from fibrados.submersao import AnalisadorSubmersao
from fibrados.variacao_canonica import STATUS_INADMISSIVEL, STATUS_NAO_QE, STATUS_OK, VariacaoCanonica
from geometria.curvatura import GeometriaReferencial
from nucleo.erros import ErroEntrada, ErroGeometria
from nucleo.politica import POLITICA_PADRAO, PoliticaNumerica
from otimizacao.resolvedor import ConfiguracaoResolvedor, ResolvedorQE
from relatorio.resumo import ResumoGeometria


class AnalisadorGeometria:
    """
    Classe que orquestra os comandos do kit.
    """

    def __init__(self, politica: PoliticaNumerica = POLITICA_PADRAO, verboso: bool = True, saida=None):
        """
        Args:
            politica: tolerâncias numéricas
            verboso: False silencia as mensagens de progresso
            saida: destino das mensagens (padrão: sys.stderr)
        """
        self.politica = politica
        self.verboso = verboso
        self.saida = saida
        self.qe = AnalisadorQE(politica)
        self.sasaki = AnalisadorSasaki3(politica)
        self.submersao = AnalisadorSubmersao(politica)
        self.variacao = VariacaoCanonica(politica)
        self.resolvedor = ResolvedorQE(politica)
        self.resumo = ResumoGeometria()
        self.catalogo = CatalogoExemplos(politica)

    # ==================== Log ==================== #

    def _log(self, mensagem: str = "") -> None:
        if self.verboso:
            print(mensagem, file=self.saida or sys.stderr)

    def _banner(self, titulo: str) -> None:
        self._log("=" * 70)
        self._log(titulo)
        self._log("=" * 70)

    def _mostrar(self, mensagens: Dict[str, str]) -> None:
        for mensagem in mensagens.values():
            self._log(f"   {mensagem}")

    # ==================== Entrada ==================== #

    def carregar(self, caminho: Optional[str] = None, entrada: Optional[str] = None) -> ArquivoProblema:
        """Arquivo de problema ou entrada do catálogo (--entry)."""
        if entrada is not None:
            self._log(f"📚 Entrada do catálogo: {entrada}")
            return self.catalogo.por_nome(entrada).para_problema()
        if caminho is None:
            raise ErroEntrada("❌ Informe um arquivo de problema ou --entry")

        self._log(f"📂 Carregando {caminho}...")
        carregador = CarregadorProblema(caminho)
        problema = carregador.carregar()
        for aviso in carregador.avisos:
            self._log(aviso)
        self._log(f"✅ Problema carregado (d = {problema.dim}, {len(problema.brackets)} colchetes)")
        return problema

    @staticmethod
    def _parametro(flag: Optional[float], arquivo: Optional[float], nome: str) -> float:
        valor = flag if flag is not None else arquivo
        if valor is None:
            raise ErroEntrada(f"❌ Parâmetro {nome} ausente (use --{nome} ou o campo do arquivo)")
        return float(valor)

    def _triplo(self, problema: ArquivoProblema, m: Optional[float], lam: Optional[float]) -> TriploQE:
        """λ da flag, do arquivo, ou ajustado quando nenhum dos dois existe."""
        referencial = problema.para_referencial(self.politica.validacao)
        metrica = problema.para_metrica(self.politica.validacao)
        X = problema.para_vetor()
        m = self._parametro(m, problema.m, "m")
        lam = lam if lam is not None else problema.lam
        if lam is None:
            lam, _ = self.qe.ajustar_lambda(referencial, metrica, X, m)
            self._log(f"💡 λ não informado: usando o ajustado λ = {lam:.12g}")
        return TriploQE(referencial, metrica, X, m, lam, problema.compact)

    # ==================== verify ==================== #

    def verificar(
        self, problema: ArquivoProblema, m: Optional[float] = None, lam: Optional[float] = None
    ) -> Dict[str, Any]:
        self._banner("🔍 VERIFICAÇÃO QUASI-EINSTEIN")
        triplo = self._triplo(problema, m, lam)
        geo = GeometriaReferencial(triplo.referencial, triplo.metrica, self.politica)

        relatorio = self.qe.relatorio(triplo).para_dict()
        relatorio["lambda"] = triplo.lam
        relatorio["m"] = triplo.m
        relatorio["verified"] = relatorio["residual_norm"] <= self.politica.precondicao_qe
        relatorio["is_killing"] = geo.eh_killing(triplo.X)[0]
        relatorio["exclusion_check"] = self.qe.verificar_exclusao(triplo.m, triplo.lam)

        try:
            caso, valor = self.qe.tricotomia_positividade(triplo)
            relatorio["positivity_trichotomy"] = {"case": caso.value, "value": valor}
        except ErroGeometria:
            relatorio["positivity_trichotomy"] = None

        estrutura = self.qe.estrutura_ricci(triplo.referencial, triplo.metrica, triplo)
        relatorio["ricci_eigenvalues"] = [
            {"value": valor, "multiplicity": mult} for valor, mult in estrutura.grupos
        ]
        relatorio["x_eigenvalue_multiplicity"] = estrutura.multiplicidade_x
        relatorio["identities"] = geo.verificar_identidades()

        if problema.indice_vertical is not None:
            relatorio["submersion"] = self._verificar_submersao(triplo, problema.indice_vertical)

        self._mostrar(self.resumo.verificacao(relatorio))
        return relatorio

    def _verificar_submersao(self, triplo: TriploQE, vertical: int) -> Dict[str, Any]:
        try:
            sd = self.submersao.construir(triplo.referencial, triplo.metrica, vertical)
            bloco = sd.para_dict()
            bloco["yang_mills"] = self.submersao.verificar_yang_mills(sd)[0]
            bloco["qe_conditions"] = self.submersao.verificar_qe_submersao(
                sd, triplo.m, triplo.X, triplo.lam
            ).para_dict()
            bloco["omega_form"] = self.submersao.verificar_forma_omega(sd, triplo.m, triplo.X).para_dict()
        except ErroGeometria as e:
            return {"error": str(e)}

        try:
            bloco["almost_kahler"] = self.submersao.estrutura_quase_kahler(
                sd, triplo.m, self.submersao.norma_x_vertical(sd, triplo.X)
            ).para_dict()
        except ErroGeometria as e:
            bloco["almost_kahler"] = {"error": str(e)}
        return bloco

    # ==================== variation ==================== #

    def variacao_canonica(
        self,
        problema: ArquivoProblema,
        grade: Sequence[float],
        m: Optional[float] = None,
        lam: Optional[float] = None,
    ) -> Tuple[pd.DataFrame, Dict[str, Any]]:
        """
        Tabela da família g_t. O λ informado (flag ou arquivo) é comparado
        com λ_1 da família; divergência vira aviso e `lambda_matches` falso.
        """
        self._banner("📈 VARIAÇÃO CANÔNICA")
        if problema.indice_vertical is None:
            raise ErroEntrada("❌ O arquivo precisa informar 'vertical' para a variação canônica")

        referencial = problema.para_referencial(self.politica.validacao)
        metrica = problema.para_metrica(self.politica.validacao)
        m = self._parametro(m, problema.m, "m")

        sd = self.submersao.construir(referencial, metrica, problema.indice_vertical, estrito=False)
        norma_x = float(np.sqrt(self.submersao.norma_x_vertical(sd, problema.para_vetor())))

        pontos = self.variacao.verificar_familia(
            referencial, metrica, problema.indice_vertical, m, grade, norma_x
        )
        tabela = VariacaoCanonica.tabela(pontos)
        info = self.variacao.relatorio
        vi = info["entrada"]
        avisos = list(info["avisos"])

        lam = lam if lam is not None else problema.lam
        lambda_1 = self.variacao.lambda_t(vi, 1.0)
        confere = lam is None or abs(lam - lambda_1) <= self.politica.precondicao_qe * max(1.0, abs(lambda_1))
        if not confere:
            avisos.append(f"⚠️ λ informado ({lam:.12g}) difere de λ_1 = {lambda_1:.12g} da família")

        relatorio = {
            "a_norm_sq": vi.norma_a_quadrada,
            "x_norm_sq": vi.norma_x_quadrada,
            "m": vi.m,
            "n": vi.n,
            "base_lambda": vi.lambda_base,
            "base_lambda_formula": self.variacao.lambda_base(vi),
            "admissible_interval": str(info["intervalo"]),
            "einstein_point": info["ponto_einstein"],
            "given_lambda": lam,
            "lambda_1": lambda_1,
            "lambda_matches": confere,
            "warnings": avisos,
            "counts": {
                "points": len(pontos),
                "ok": sum(p.status == STATUS_OK for p in pontos),
                "inadmissible": sum(p.status == STATUS_INADMISSIVEL for p in pontos),
                "not_qe": sum(p.status == STATUS_NAO_QE for p in pontos),
            },
            "points": [p.para_dict() for p in pontos],
        }
        self._mostrar(self.resumo.variacao(relatorio))
        return tabela, relatorio

    # ==================== classify ==================== #

    def classificar(
        self, problema: ArquivoProblema, m: Optional[float] = None, lam: Optional[float] = None
    ) -> Dict[str, Any]:
        self._banner("🧭 CLASSIFICAÇÃO DE THURSTON")
        triplo = self._triplo(problema, m, lam)
        resultado = self.sasaki.classificar_thurston(triplo)
        relatorio = resultado.para_dict()
        relatorio["positivity"] = triplo.positividade
        self._mostrar(self.resumo.classificacao(relatorio))
        return relatorio

    # ==================== solve ==================== #

    def resolver(
        self,
        problema: ArquivoProblema,
        config: ConfiguracaoResolvedor,
        grade: Optional[Sequence[float]] = None,
    ) -> Dict[str, Any]:
        self._banner("🚀 BUSCA DE SOLUÇÕES QUASI-EINSTEIN")
        self._log(f"   {config.inicios} partidas, semente {config.semente}, parametrização {config.parametrizacao}")
        referencial = problema.para_referencial(self.politica.validacao)

        relatorio: Dict[str, Any] = {}
        if grade is None:
            registros = self.resolvedor.resolver(referencial, config)
        else:
            varredura = self.resolvedor.varrer_sinal_lambda(referencial, config, grade)
            registros = varredura.registros
            relatorio["lambda_scan"] = {
                "t_zero": varredura.t_zero,
                "table": varredura.tabela.to_dict(orient="records"),
                "anchor_start": varredura.ancora.partida,
            }

        lista: List[Dict[str, Any]] = [r.para_dict() for r in registros]
        relatorio["records"] = lista
        relatorio["report"] = {k: v for k, v in self.resolvedor.relatorio.items()}
        self._mostrar(self.resumo.resolucao(lista, self.resolvedor.relatorio))
        return relatorio

    # ==================== catalog ==================== #

    def exportar_catalogo(self, pasta: str) -> List[str]:
        self._banner("📚 EXPORTAÇÃO DO CATÁLOGO")
        caminhos = self.catalogo.exportar(pasta)
        for nome, caminho in caminhos.items():
            self._log(f"   ✅ {nome} -> {caminho}")
        return list(caminhos)
