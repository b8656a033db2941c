"""
脚本解释器

按行号顺序执行语句，遇到第一个错误即停止。引擎抛出的 ValueError /
ArithmeticError 包装为 ScriptEvaluationError，保留行号与原始异常。

同一个解释器内 P(n) / CI(n; ...) 只构造一次，所以
`integrate ... on P(4)` 与 `space Y = P(4)` 指向同一个簇。
"""

from fractions import Fraction
from functools import reduce
from typing import Any, Dict, List, Optional

from src.core.chow import (
    Bundle,
    Embedding,
    ProjectiveModel,
    RingMap,
    SectionModel,
    Variety,
    VerificationReport,
    linear_subspace_embedding,
    make_blowup,
    make_complete_intersection,
    make_proj_space,
)
from src.core.cli.functions import CallContext, FunctionRegistry
from src.core.cli.report import Report, StatementResult
from src.core.cli.script import (
    BinaryOp,
    BlowupForm,
    BundleDecl,
    BundleTerm,
    Call,
    CheckStmt,
    ClassDecl,
    Expr,
    HyperbolicForm,
    IntegrateStmt,
    Name,
    Number,
    OrthDecl,
    OrthReduceForm,
    PrintStmt,
    ProjectiveForm,
    Script,
    SectionDecl,
    SpaceDecl,
    SpaceRef,
    Statement,
    SubspaceForm,
    UnaryMinus,
)
from src.core.cli.values import ClassValue, bind, combine, describe, equal
from src.core.errors import ScriptError, ScriptEvaluationError
from src.core.fgl import DEFAULT_CAP, FGLRegistry, FormalGroupLaw
from src.core.orth import OrthBundle, hyperbolic, isotropic_reduce
from src.utils.logger import logger


class Interpreter:
    """
    脚本解释器

    Attributes:
        cap: 级数默认截断次数（sqrt_line、形式群律）
        env: 名字 → 值（空间、丛、正交丛、截面、类）
    """

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self.env: Dict[str, Any] = {}
        self._projective: Dict[str, ProjectiveModel] = {}
        self._embeddings: List[Embedding] = []
        self._laws: Dict[str, FormalGroupLaw] = {}

    # ------------------------------------------------------------------
    # 执行
    # ------------------------------------------------------------------

    def run(self, script: Script) -> Report:
        report = Report()
        for statement in script:
            try:
                result = self.execute(statement)
            except ScriptError as e:
                report.error = e
            except (ValueError, ArithmeticError) as e:
                report.error = ScriptEvaluationError(
                    f"{type(e).__name__}: {e}", statement.line, origin=e
                )
            else:
                if result is not None:
                    report.add(result)
                continue
            logger.debug(f"脚本执行中止: {report.error}")
            break
        logger.info(f"脚本执行完成: passed={report.passed} failed={report.failed}")
        return report

    def execute(self, statement: Statement) -> Optional[StatementResult]:
        """执行一条语句；声明返回 None"""
        if isinstance(statement, SpaceDecl):
            self.env[statement.name] = self._space(statement)
        elif isinstance(statement, BundleDecl):
            self.env[statement.name] = self._bundle(statement)
        elif isinstance(statement, OrthDecl):
            self.env[statement.name] = self._orth(statement)
        elif isinstance(statement, SectionDecl):
            self.env[statement.name] = self._section(statement)
        elif isinstance(statement, ClassDecl):
            self.env[statement.name] = self.class_value(statement.expr, statement)
        elif isinstance(statement, PrintStmt):
            value = self.evaluate(statement.expr, statement)
            return StatementResult(statement.line, statement.kind, statement.source, result=_display(value))
        elif isinstance(statement, CheckStmt):
            return self._check(statement)
        elif isinstance(statement, IntegrateStmt):
            space = self.resolve_space(statement.space)
            value = bind(self.class_value(statement.expr, statement), space)
            result = space.integrate(value.normal_form())
            return StatementResult(statement.line, statement.kind, statement.source, result=str(result))
        return None

    def _check(self, statement: CheckStmt) -> StatementResult:
        lhs = self.class_value(statement.lhs, statement)
        rhs = self.class_value(statement.rhs, statement)
        left, right = equal(lhs, rhs)
        verdict = VerificationReport.compare("check", left, right, line=statement.line)
        if not verdict.passed:
            logger.warning(f"line {statement.line}: 校验失败 {verdict.lhs} != {verdict.rhs}")
        return StatementResult(
            statement.line,
            statement.kind,
            statement.source,
            verdict=verdict.verdict,
            lhs=verdict.lhs,
            rhs=verdict.rhs,
        )

    # ------------------------------------------------------------------
    # 声明
    # ------------------------------------------------------------------

    def projective(self, form: ProjectiveForm) -> ProjectiveModel:
        key = str(form)
        if key not in self._projective:
            if form.degrees:
                variety = make_complete_intersection(form.ambient_dim, list(form.degrees))
            else:
                variety = make_proj_space(form.ambient_dim)
            self._projective[key] = variety
        return self._projective[key]

    def resolve_space(self, ref: SpaceRef) -> Variety:
        if isinstance(ref, ProjectiveForm):
            return self.projective(ref)
        return self.env[ref.name]

    def embedding_of(self, variety: Variety) -> Optional[Embedding]:
        """'P(k) in Y' 声明的子空间的嵌入"""
        for embedding in self._embeddings:
            if embedding.sub is variety:
                return embedding
        return None

    def _space(self, statement: SpaceDecl) -> Variety:
        form = statement.form
        if isinstance(form, ProjectiveForm):
            return self.projective(form)
        if isinstance(form, SubspaceForm):
            parent = self.env[form.parent]
            if not isinstance(parent, ProjectiveModel):
                raise ScriptEvaluationError(f"{form.parent} 不是射影模型，不能嵌入 P(k)", statement.line, form.column)
            embedding = linear_subspace_embedding(parent, form.dimension)
            self._embeddings.append(embedding)
            return embedding.sub
        return self._blowup(statement, form)

    def _blowup(self, statement: SpaceDecl, form: BlowupForm) -> Variety:
        ambient = self.env[form.ambient]
        if form.normal is None:
            section: SectionModel = self.env[form.center]
            if section.base is not ambient:
                raise ScriptEvaluationError(
                    f"截面 {form.center} 不在 {form.ambient} 上", statement.line, form.column
                )
            return section.blowup
        center, normal = self.env[form.center], self.env[form.normal]
        if not isinstance(center, ProjectiveModel) or not isinstance(ambient, ProjectiveModel):
            raise ScriptEvaluationError("爆破的外围空间与中心都必须是射影模型", statement.line, form.column)
        if normal.base is not center:
            raise ScriptEvaluationError(f"法丛 {form.normal} 不在 {form.center} 上", statement.line, form.column)
        gysin = RingMap(ambient, center, {ProjectiveModel.HYPERPLANE: center.hyperplane()})
        return make_blowup(ambient, center, gysin, normal)

    def _bundle(self, statement: BundleDecl) -> Bundle:
        base = self.resolve_space(statement.base)
        parts = [self._bundle_term(statement, term, base) for term in statement.terms]
        return reduce(lambda a, b: a + b, parts)

    def _bundle_term(self, statement: BundleDecl, term: BundleTerm, base: Variety) -> Bundle:
        if term.kind == "line":
            if not isinstance(base, ProjectiveModel):
                raise ScriptEvaluationError(f"O(a) 只在射影模型上有定义: {base.name}", statement.line, term.column)
            return Bundle.split(base, [term.twist] * term.multiplicity)
        bundle: Bundle = self.env[term.name]
        if bundle.base is not base:
            raise ScriptEvaluationError(
                f"丛 {term.name} 在 {bundle.base.name} 上，不在 {base.name} 上", statement.line, term.column
            )
        if term.kind == "dual":
            bundle = bundle.dual()
        return reduce(lambda a, b: a + b, [bundle] * term.multiplicity)

    def _orth(self, statement: OrthDecl) -> OrthBundle:
        form = statement.form
        if isinstance(form, HyperbolicForm):
            return hyperbolic(self.env[form.bundle], form.sign)
        if isinstance(form, OrthReduceForm):
            return isotropic_reduce(self.env[form.orth], form.labels)
        return reduce(lambda a, b: a + b, [self.env[p] for p in form.parts])

    def _section(self, statement: SectionDecl) -> SectionModel:
        target = self.env[statement.form.target]
        bundle = target.positive_part if isinstance(target, OrthBundle) else target
        return SectionModel(bundle, statement.form.labels, statement.name)

    # ------------------------------------------------------------------
    # 表达式
    # ------------------------------------------------------------------

    def law(self, name: str) -> FormalGroupLaw:
        if name not in self._laws:
            self._laws[name] = FGLRegistry.create(name, self.cap)
        return self._laws[name]

    def evaluate(self, expr: Expr, statement: Statement) -> Any:
        if isinstance(expr, Number):
            return ClassValue.constant(expr.value)
        if isinstance(expr, Name):
            if expr.name in self.env:
                return self.env[expr.name]
            return ClassValue.symbol(expr.name)
        if isinstance(expr, UnaryMinus):
            value = self._operand(expr.operand, statement, "-", expr.column)
            return ClassValue(-value.poly, value.ring, value.coefficients)
        if isinstance(expr, BinaryOp):
            return self._binary(expr, statement)
        if isinstance(expr, Call):
            handler = FunctionRegistry.get(expr.function)
            return handler(CallContext(self, expr, statement))
        raise ScriptEvaluationError(f"无法求值的表达式 {expr!r}", statement.line)

    def _operand(self, expr: Expr, statement: Statement, op: str, column: int) -> ClassValue:
        value = self.evaluate(expr, statement)
        if not isinstance(value, ClassValue):
            raise ScriptEvaluationError(f"'{op}' 的运算对象需要类，收到{describe(value)}", statement.line, column)
        return value

    def _binary(self, expr: BinaryOp, statement: Statement) -> ClassValue:
        left = self._operand(expr.left, statement, expr.op, expr.column)
        if expr.op == "^":
            n = self.integer(expr.right, statement)
            if n < 0:
                raise ScriptEvaluationError(f"幂指数必须是非负整数: {n}", statement.line, expr.column)
            return ClassValue(left.poly ** n, left.ring, left.coefficients)
        right = self._operand(expr.right, statement, expr.op, expr.column)
        if expr.op == "/":
            divisor = right.constant_value()
            if divisor is None:
                raise ScriptEvaluationError("只能除以常数", statement.line, expr.column)
            if divisor == 0:
                raise ScriptEvaluationError("除数为0", statement.line, expr.column)
            return ClassValue(left.poly.scale(Fraction(1) / divisor), left.ring, left.coefficients)
        return combine(expr.op, left, right)

    def class_value(self, expr: Expr, statement: Statement) -> ClassValue:
        value = self.evaluate(expr, statement)
        if not isinstance(value, ClassValue):
            raise ScriptEvaluationError(f"这里需要类，收到{describe(value)}", statement.line)
        return value

    def integer(self, expr: Expr, statement: Statement) -> int:
        value = self.class_value(expr, statement).constant_value()
        if value is None or value.denominator != 1:
            raise ScriptEvaluationError("这里需要整数常量", statement.line, getattr(expr, "column", None))
        return int(value)


def _display(value: Any) -> str:
    if isinstance(value, ClassValue):
        return str(value)
    if isinstance(value, Variety):
        return value.name
    return repr(value)
