"""
脚本函数注册表

每个脚本函数对应一个处理函数 handler(ctx) -> 值，ctx 是 CallContext，
按需求值参数并做类型检查。处理函数通过 FunctionRegistry 注册，名字必须
出现在语言的签名表 SIGNATURES 中。

使用方式:
    handler = FunctionRegistry.get("sqrt_euler")
    value = handler(CallContext(interpreter, call, statement))
"""

from typing import Any, Callable, Dict, List, Optional

from src.core.arith import GradedPolynomial
from src.core.chow import Bundle, SectionModel, Variety, localized_euler_blowup, quadric_pushforward
from src.core.cli.script import SIGNATURES, Call, Name, Statement
from src.core.cli.values import ClassValue, bind, describe, same_variety
from src.core.errors import ScriptEvaluationError, StructuralError
from src.core.fgl import sqrt_h_apply
from src.core.ktheory import (
    KTheoryModel,
    euler_k,
    sqrt_euler_k,
    sqrt_euler_k_localized,
    sqrt_line,
    sqrt_line_coefficient,
)
from src.core.orth import (
    OrthBundle,
    isotropic_reduce,
    sqrt_euler,
    sqrt_euler_localized_blowup,
    sqrt_euler_localized_lci,
    sqrt_euler_two_sections,
    two_section_support,
)
from src.utils.logger import logger

Handler = Callable[["CallContext"], Any]


class CallContext:
    """
    一次函数调用的参数访问

    Attributes:
        interpreter: 当前解释器
        call: 调用节点
        statement: 所在语句（错误信息的行号）
    """

    def __init__(self, interpreter, call: Call, statement: Statement):
        self.interpreter = interpreter
        self.call = call
        self.statement = statement
        self._values: Dict[int, Any] = {}

    def error(self, detail: str) -> ScriptEvaluationError:
        return ScriptEvaluationError(detail, self.statement.line, self.call.column)

    def has(self, i: int) -> bool:
        return i < len(self.call.args)

    def arg(self, i: int) -> Any:
        if i not in self._values:
            self._values[i] = self.interpreter.evaluate(self.call.args[i], self.statement)
        return self._values[i]

    def _expect(self, i: int, kinds, what: str) -> Any:
        value = self.arg(i)
        if not isinstance(value, kinds):
            raise self.error(f"{self.call.function} 的第 {i + 1} 个参数需要{what}，收到{describe(value)}")
        return value

    def orth(self, i: int) -> OrthBundle:
        return self._expect(i, OrthBundle, "正交丛")

    def bundle(self, i: int) -> Bundle:
        """向量丛；正交丛按 V ⊕ V∨ 处理"""
        value = self._expect(i, (Bundle, OrthBundle), "丛")
        return value.underlying() if isinstance(value, OrthBundle) else value

    def section(self, i: int) -> SectionModel:
        return self._expect(i, SectionModel, "截面")

    def space(self, i: int) -> Variety:
        return self._expect(i, Variety, "空间")

    def class_value(self, i: int) -> ClassValue:
        return self._expect(i, ClassValue, "类")

    def chow_class(self, i: int) -> Optional[GradedPolynomial]:
        """可选的 Chow 类参数（缺省为 None）"""
        if not self.has(i):
            return None
        value = self.class_value(i)
        if value.is_k:
            raise self.error(f"{self.call.function} 的第 {i + 1} 个参数需要 Chow 类，收到 K 类")
        return value.poly

    def integer(self, i: int) -> int:
        return self.interpreter.integer(self.call.args[i], self.statement)


def on(variety: Optional[Variety], poly: GradedPolynomial) -> ClassValue:
    """落在 variety 上的 Chow 类；variety 为 None（零点集为空）时为自由的0"""
    if variety is None:
        return ClassValue(GradedPolynomial.zero())
    return ClassValue(variety.normal_form(poly), variety)


class FunctionRegistry:
    """
    脚本函数注册表

    Attributes:
        _registry: 函数名 → 处理函数
    """

    _registry: Dict[str, Handler] = {}

    @classmethod
    def register(cls, name: str, handler: Handler) -> None:
        """
        Raises:
            StructuralError: 名字不在签名表中，或 handler 不可调用
        """
        if name not in SIGNATURES:
            raise StructuralError(f"函数 {name} 没有签名，不能注册")
        if not callable(handler):
            raise StructuralError(f"函数 {name} 的实现必须可调用: {handler!r}")
        cls._registry[name] = handler
        logger.debug(f"注册脚本函数: {name}")

    @classmethod
    def get(cls, name: str) -> Handler:
        if name not in cls._registry:
            raise StructuralError(f"函数 {name} 没有实现。可用: {cls.list()}")
        return cls._registry[name]

    @classmethod
    def list(cls) -> List[str]:
        return sorted(cls._registry)


# ----------------------------------------------------------------------
# Chow 与正交丛
# ----------------------------------------------------------------------


def _sqrt_euler(ctx: CallContext) -> ClassValue:
    F = ctx.orth(0)
    return on(F.base, sqrt_euler(F))


def _euler(ctx: CallContext) -> ClassValue:
    V = ctx.bundle(0)
    return on(V.base, V.euler())


def _chern(ctx: CallContext) -> ClassValue:
    V = ctx.bundle(0)
    if not ctx.has(1):
        return on(V.base, V.total_chern())
    return on(V.base, V.chern_class(ctx.integer(1)))


def _segre(ctx: CallContext) -> ClassValue:
    V = ctx.bundle(0)
    if not ctx.has(1):
        return on(V.base, V.total_segre())
    return on(V.base, V.segre_class(ctx.integer(1)))


def _reduce(ctx: CallContext) -> OrthBundle:
    return isotropic_reduce(ctx.orth(0), ctx.call.labels)


def _localize(ctx: CallContext) -> ClassValue:
    F, s = ctx.orth(0), ctx.section(1)
    result = sqrt_euler_localized_blowup(F, s, ctx.chow_class(2), ctx.chow_class(3))
    return on(s.zero_locus, result)


def _localize_lci(ctx: CallContext) -> ClassValue:
    F, s = ctx.orth(0), ctx.section(1)
    return on(s.zero_locus, sqrt_euler_localized_lci(F, s))


def _localize2(ctx: CallContext) -> ClassValue:
    F, s, t = ctx.orth(0), ctx.section(1), ctx.section(2)
    result = sqrt_euler_two_sections(F, s, t, ctx.chow_class(3), ctx.chow_class(4))
    target = two_section_support(s, t)
    return on(target.sub if target is not None else None, result)


def _euler_local(ctx: CallContext) -> ClassValue:
    V, s = ctx.bundle(0), ctx.section(1)
    result = localized_euler_blowup(V, s, ctx.chow_class(2), ctx.chow_class(3))
    return on(s.zero_locus, result)


def _pushforward(ctx: CallContext) -> ClassValue:
    """pushforward(s, c): X → Y；pushforward(s, t, c): X∩Z → X；pushforward(X, c): 子空间 → 外围"""
    target = ctx.arg(0)
    if ctx.has(2):
        s, t = ctx.section(0), ctx.section(1)
        embedding = two_section_support(s, t)
        if embedding is None:
            raise ctx.error(f"{s.name} 与 {t.name} 的零点集不相交，没有推出")
        value = bind(ctx.class_value(2), embedding.sub)
        return on(embedding.ambient, embedding.pushforward(value.normal_form()))
    if isinstance(target, SectionModel):
        embedding = target.embedding
        if embedding is None:
            raise ctx.error(f"截面 {target.name} 的零点集为空，没有推出")
    elif isinstance(target, Variety):
        embedding = ctx.interpreter.embedding_of(target)
        if embedding is None:
            raise ctx.error(f"{target.name} 没有嵌入数据（用 'space X = P(k) in Y' 声明）")
    else:
        raise ctx.error(f"pushforward 的第 1 个参数需要截面或子空间，收到{describe(target)}")
    value = bind(ctx.class_value(1), embedding.sub)
    return on(embedding.ambient, embedding.pushforward(value.normal_form()))


def _quadric_pushforward(ctx: CallContext) -> ClassValue:
    """二次曲面丛 Q ⊂ ℙ(V) 上关于 h 与底簇生成元的类推到底簇"""
    V = ctx.bundle(0)
    value = ctx.class_value(1)
    if value.is_k or value.coefficients:
        raise ctx.error("quadric_pushforward 的第 2 个参数需要 Chow 类")
    if value.ring is not None and not same_variety(value.ring, V.base):
        raise ctx.error(f"类不在 {V.base.name} 上")
    return on(V.base, quadric_pushforward(V, value.poly))


def _integrate(ctx: CallContext) -> ClassValue:
    space = ctx.space(1)
    value = bind(ctx.class_value(0), space)
    return ClassValue.constant(space.integrate(value.normal_form()))


# ----------------------------------------------------------------------
# K 理论与形式群律
# ----------------------------------------------------------------------


def _line(ctx: CallContext) -> Any:
    raise ctx.error("O(a) 只能作为 sqrt_line 的参数")


def _sqrt_line(ctx: CallContext) -> ClassValue:
    node = ctx.call.args[0]
    if not isinstance(node, Call) or node.function != "O":
        raise ctx.error("sqrt_line 的第 1 个参数必须是 O(a)")
    twist = ctx.interpreter.integer(node.args[0], ctx.statement)
    cap = ctx.integer(1) if ctx.has(1) else ctx.interpreter.cap
    model = KTheoryModel.free(cap)
    return ClassValue(sqrt_line(model, model.line_class(twist), cap), model)


def _euler_k(ctx: CallContext) -> ClassValue:
    V = ctx.bundle(0)
    model = KTheoryModel(V.base)
    return ClassValue(euler_k(model, V), model)


def _sqrt_euler_k(ctx: CallContext) -> ClassValue:
    F = ctx.orth(0)
    model = KTheoryModel(F.base)
    return ClassValue(sqrt_euler_k(model, F), model)


def _localize_k(ctx: CallContext) -> ClassValue:
    F, s = ctx.orth(0), ctx.section(1)
    result = sqrt_euler_k_localized(F, s)
    if s.zero_locus is None:
        return ClassValue(GradedPolynomial.zero())
    return ClassValue(result, KTheoryModel(s.zero_locus))


def _coeff(ctx: CallContext) -> ClassValue:
    return ClassValue.constant(sqrt_line_coefficient(ctx.integer(0)))


def _sqrt_h(ctx: CallContext) -> ClassValue:
    V = ctx.bundle(0)
    node = ctx.call.args[1]
    if not isinstance(node, Name):
        raise ctx.error("sqrt_h 的第二个参数必须是形式群律的名字")
    law = ctx.interpreter.law(node.name)
    coefficients = tuple(sorted(law.ring_degrees.items()))
    return ClassValue(sqrt_h_apply(V, law), V.base, coefficients)


FunctionRegistry.register("sqrt_euler", _sqrt_euler)
FunctionRegistry.register("euler", _euler)
FunctionRegistry.register("chern", _chern)
FunctionRegistry.register("segre", _segre)
FunctionRegistry.register("reduce", _reduce)
FunctionRegistry.register("localize", _localize)
FunctionRegistry.register("localize_lci", _localize_lci)
FunctionRegistry.register("localize2", _localize2)
FunctionRegistry.register("euler_local", _euler_local)
FunctionRegistry.register("pushforward", _pushforward)
FunctionRegistry.register("quadric_pushforward", _quadric_pushforward)
FunctionRegistry.register("integrate", _integrate)
FunctionRegistry.register("O", _line)
FunctionRegistry.register("sqrt_line", _sqrt_line)
FunctionRegistry.register("euler_k", _euler_k)
FunctionRegistry.register("sqrt_euler_k", _sqrt_euler_k)
FunctionRegistry.register("localize_k", _localize_k)
FunctionRegistry.register("coeff", _coeff)
FunctionRegistry.register("sqrt_h", _sqrt_h)
