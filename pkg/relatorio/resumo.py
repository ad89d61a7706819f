"""
Módulo: Resumo
Gera mensagens curtas (com emoji) a partir dos relatórios de cada comando.
Vai para stderr; o JSON/CSV em stdout continua limpo.
"""

from typing import Any, Dict, List


class ResumoGeometria:
    """
    Classe responsável por transformar os relatórios em mensagens legíveis.
    """

    @staticmethod
    def _fmt(valor: Any, casas: int = 6) -> str:
        try:
            return f"{float(valor):.{casas}g}"
        except (TypeError, ValueError):
            return "-"

    # ========== verify ==========
    def verificacao(self, relatorio: Dict[str, Any]) -> Dict[str, str]:
        mensagens = {}

        residuo = relatorio.get("residual_norm")
        if relatorio.get("verified"):
            mensagens["qe"] = f"✅ Triplo quasi-Einstein (resíduo {self._fmt(residuo, 3)})"
        else:
            mensagens["qe"] = f"❌ Não é quasi-Einstein (resíduo {self._fmt(residuo, 3)})"

        mensagens["lambda"] = f"📊 λ ajustado = {self._fmt(relatorio.get('lambda_fit'))}"

        if relatorio.get("trivial"):
            mensagens["trivial"] = "💡 X = 0: solução trivial (métrica de Einstein)"
        elif relatorio.get("is_killing"):
            mensagens["killing"] = "✅ X é Killing"
        else:
            mensagens["killing"] = (
                f"⚠️ X não é Killing (|L_X g| = {self._fmt(relatorio.get('killing_residual'), 3)})"
            )

        tricotomia = relatorio.get("positivity_trichotomy")
        if tricotomia:
            mensagens["tricotomia"] = (
                f"📐 λ + |X|²/m = {self._fmt(tricotomia.get('value'))} ({tricotomia.get('case')})"
            )

        if relatorio.get("exclusion_check") is False:
            mensagens["exclusao"] = "❌ m < 0 e λ < 0: excluído para variedades compactas"

        submersao = relatorio.get("submersion")
        if submersao:
            if "error" in submersao:
                mensagens["submersao"] = f"⚠️ Submersão: {submersao['error']}"
            else:
                estado = "✅" if submersao.get("qe_conditions", {}).get("passed") else "❌"
                mensagens["submersao"] = (
                    f"{estado} Submersão: |A|² = {self._fmt(submersao.get('a_norm_sq'))}, "
                    f"|ω|² = {self._fmt(submersao.get('omega_norm_sq'))}"
                )
        return mensagens

    # ========== variation ==========
    def variacao(self, relatorio: Dict[str, Any]) -> Dict[str, str]:
        mensagens = {
            "intervalo": f"📏 Intervalo admissível: {relatorio.get('admissible_interval')}",
        }
        t_estrela = relatorio.get("einstein_point")
        if t_estrela is not None:
            mensagens["einstein"] = f"💡 Ponto de Einstein em t* = {self._fmt(t_estrela)}"
        if relatorio.get("base_lambda") is not None:
            mensagens["base"] = f"📊 Base Einstein com λ̌ = {self._fmt(relatorio['base_lambda'])}"

        contagem = relatorio.get("counts", {})
        mensagens["pontos"] = (
            f"📈 {contagem.get('points', 0)} pontos: {contagem.get('ok', 0)} ok, "
            f"{contagem.get('inadmissible', 0)} inadmissíveis, {contagem.get('not_qe', 0)} não QE"
        )
        for i, aviso in enumerate(relatorio.get("warnings", [])):
            mensagens[f"aviso_{i}"] = aviso
        return mensagens

    # ========== classify ==========
    def classificacao(self, relatorio: Dict[str, Any]) -> Dict[str, str]:
        balde = relatorio.get("bucket")
        mensagens = {"balde": f"🧭 Geometria de Thurston: {balde}"}
        if relatorio.get("H") is not None:
            mensagens["H"] = f"📐 Curvatura φ-seccional H = {self._fmt(relatorio['H'], 10)}"
        if relatorio.get("sasakian") is not None:
            estado = "✅" if relatorio["sasakian"] else "❌"
            mensagens["sasaki"] = f"{estado} Sasakiana após normalização"
        return mensagens

    # ========== solve ==========
    def resolucao(self, registros: List[Dict[str, Any]], relatorio: Dict[str, Any]) -> Dict[str, str]:
        nao_triviais = [r for r in registros if not r.get("trivial")]
        mensagens = {
            "partidas": (
                f"🚀 {relatorio.get('inicios', 0)} partidas, "
                f"{relatorio.get('convergidos', 0)} convergidas"
            ),
            "registros": (
                f"✅ {len(registros)} soluções distintas ({len(nao_triviais)} não triviais)"
            ),
        }
        if relatorio.get("rejeitados_exclusao"):
            mensagens["exclusao"] = (
                f"⚠️ {relatorio['rejeitados_exclusao']} rejeitadas por exclusão (m < 0, λ < 0)"
            )
        if relatorio.get("duplicados"):
            mensagens["duplicados"] = f"🔁 {relatorio['duplicados']} duplicadas descartadas"
        if not registros:
            mensagens["vazio"] = "⚠️ Nenhuma partida convergiu"
        return mensagens
