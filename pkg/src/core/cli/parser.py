"""
脚本解析器

逐行解析：去掉 `#` 之后的注释，跳过空行，每行词法分析后递归下降解析为一条语句。
解析完成后做一遍静态名字检查：
- 名字只能声明一次，且不能与关键字、构造器、函数名、生成元冲突
- 声明位置上的引用（on Y、section(V; ...) 等）必须先声明且种类正确
- 表达式中未声明的名字只能是生成元
- 函数参数个数符合签名

使用方式:
    script = parse("space Y = P(4)\\nbundle V = O(1)+O(2) on Y")
    len(script)   # 2
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from src.core.chow import DUAL, POSITIVE
from src.core.cli.script import (
    CONSTRUCTORS,
    KEYWORDS,
    SIGNATURES,
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
    Label,
    Name,
    Number,
    OrthDecl,
    OrthReduceForm,
    OrthSumForm,
    PrintStmt,
    ProjectiveForm,
    Script,
    SectionDecl,
    SectionForm,
    SpaceDecl,
    SpaceRef,
    Statement,
    StatementKind,
    SubspaceForm,
    UnaryMinus,
    is_generator_symbol,
)
from src.core.errors import ScriptSyntaxError
from src.utils.logger import logger

TOKEN_PATTERN = re.compile(
    r"""
    (?P<NUMBER>\d+)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<OP>==|[=+\-*/^(),;])
  | (?P<SKIP>[ \t]+)
  | (?P<MISMATCH>.)
    """,
    re.VERBOSE,
)

RESERVED = KEYWORDS | CONSTRUCTORS | frozenset(SIGNATURES) | frozenset(StatementKind.ALL)

# sqrt_h 的第二个参数是形式群律的名字，不参与名字检查
LAW_ARGUMENT = ("sqrt_h", 1)


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER / NAME / OP / END
    text: str
    column: int


def tokenize(text: str, line: int) -> List[Token]:
    """
    Raises:
        ScriptSyntaxError: 无法识别的字符
    """
    tokens: List[Token] = []
    for match in TOKEN_PATTERN.finditer(text):
        kind = match.lastgroup
        if kind == "SKIP":
            continue
        if kind == "MISMATCH":
            raise ScriptSyntaxError(f"无法识别的字符 {match.group()!r}", line, match.start() + 1)
        tokens.append(Token(kind, match.group(), match.start() + 1))
    tokens.append(Token("END", "", len(text) + 1))
    return tokens


def strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _is_number(node: Expr) -> bool:
    """数字字面量或它的相反数（-2H 也是隐式乘积）"""
    while isinstance(node, UnaryMinus):
        node = node.operand
    return isinstance(node, Number)


class _LineParser:
    """单行的递归下降解析器"""

    def __init__(self, tokens: List[Token], line: int, source: str):
        self.tokens = tokens
        self.pos = 0
        self.line = line
        self.source = source

    # ------------------------------------------------------------------
    # 词法游标
    # ------------------------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.peek()
        if token.kind != "END":
            self.pos += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ScriptSyntaxError:
        token = token or self.peek()
        return ScriptSyntaxError(message, self.line, token.column)

    def _describe(self, token: Token) -> str:
        return "行尾" if token.kind == "END" else repr(token.text)

    def at_op(self, text: str) -> bool:
        token = self.peek()
        return token.kind == "OP" and token.text == text

    def accept_op(self, text: str) -> bool:
        if self.at_op(text):
            self.advance()
            return True
        return False

    def expect_op(self, text: str) -> Token:
        if not self.at_op(text):
            raise self.error(f"这里需要 '{text}'，遇到 {self._describe(self.peek())}")
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        token = self.peek()
        return token.kind == "NAME" and token.text == word

    def accept_keyword(self, word: str) -> bool:
        if self.at_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            raise self.error(f"这里需要关键字 {word}，遇到 {self._describe(self.peek())}")
        return self.advance()

    def expect_name(self, what: str) -> Token:
        token = self.peek()
        if token.kind != "NAME":
            raise self.error(f"这里需要{what}，遇到 {self._describe(token)}")
        return self.advance()

    def expect_reference(self, what: str) -> Token:
        """引用已声明对象的名字（不能是保留字）"""
        token = self.expect_name(what)
        if token.text in RESERVED:
            raise self.error(f"这里需要{what}，遇到保留字 {token.text}", token)
        return token

    def expect_int(self, signed: bool = False) -> int:
        sign = 1
        if signed and self.accept_op("-"):
            sign = -1
        token = self.peek()
        if token.kind != "NUMBER":
            raise self.error(f"这里需要整数，遇到 {self._describe(token)}")
        self.advance()
        return sign * int(token.text)

    def expect_end(self) -> None:
        token = self.peek()
        if token.kind != "END":
            raise self.error(f"多余的内容 {token.text!r}", token)

    # ------------------------------------------------------------------
    # 语句
    # ------------------------------------------------------------------

    def parse_statement(self) -> Statement:
        head = self.expect_name("语句关键字")
        keyword = head.text
        if keyword not in StatementKind.ALL:
            raise self.error(f"未知的语句 {keyword}", head)

        if keyword in StatementKind.DECLARATIONS:
            name_token = self.expect_name("名字")
            self._check_declared_name(name_token)
            self.expect_op("=")
            statement = self._parse_declaration(keyword, name_token.text)
        elif keyword == StatementKind.PRINT:
            statement = PrintStmt(self.line, self.source, self.parse_expr())
        elif keyword == StatementKind.CHECK:
            lhs = self.parse_expr()
            self.expect_op("==")
            statement = CheckStmt(self.line, self.source, lhs, self.parse_expr())
        else:
            expr = self.parse_expr()
            self.expect_keyword("on")
            statement = IntegrateStmt(self.line, self.source, expr, self.parse_space_ref())
        self.expect_end()
        return statement

    def _check_declared_name(self, token: Token) -> None:
        if token.text in RESERVED:
            raise self.error(f"名字 {token.text} 是保留字", token)
        if is_generator_symbol(token.text):
            raise self.error(f"名字 {token.text} 与生成元冲突", token)

    def _parse_declaration(self, keyword: str, name: str) -> Statement:
        if keyword == StatementKind.SPACE:
            return SpaceDecl(self.line, self.source, name, self.parse_space_form())
        if keyword == StatementKind.BUNDLE:
            terms = [self.parse_bundle_term()]
            while self.accept_op("+"):
                terms.append(self.parse_bundle_term())
            self.expect_keyword("on")
            return BundleDecl(self.line, self.source, name, tuple(terms), self.parse_space_ref())
        if keyword == StatementKind.ORTH:
            return OrthDecl(self.line, self.source, name, self.parse_orth_form())
        if keyword == StatementKind.SECTION:
            return SectionDecl(self.line, self.source, name, self.parse_section_form())
        return ClassDecl(self.line, self.source, name, self.parse_expr())

    # ------------------------------------------------------------------
    # 构造式
    # ------------------------------------------------------------------

    def parse_space_form(self):
        token = self.expect_name("空间构造")
        if token.text == "blowup":
            self.expect_op("(")
            ambient = self.expect_reference("空间名").text
            self.expect_keyword("along")
            center = self.expect_reference("中心或截面名").text
            normal = None
            if self.accept_keyword("normal"):
                normal = self.expect_reference("法丛名").text
            self.expect_op(")")
            return BlowupForm(ambient, center, normal, token.column)
        form = self._parse_projective(token)
        if self.accept_keyword("in"):
            if form.degrees:
                raise self.error("只有 P(k) 可以嵌入已声明的空间", token)
            parent = self.expect_reference("空间名").text
            return SubspaceForm(form.ambient_dim, parent, token.column)
        return form

    def _parse_projective(self, token: Token) -> ProjectiveForm:
        if token.text == "P":
            self.expect_op("(")
            n = self.expect_int()
            self.expect_op(")")
            return ProjectiveForm(n, (), token.column)
        if token.text == "CI":
            self.expect_op("(")
            n = self.expect_int()
            self.expect_op(";")
            degrees = [self.expect_int()]
            while self.accept_op(","):
                degrees.append(self.expect_int())
            self.expect_op(")")
            return ProjectiveForm(n, tuple(degrees), token.column)
        raise self.error(f"未知的空间构造 {token.text}", token)

    def parse_space_ref(self) -> SpaceRef:
        token = self.peek()
        if token.kind == "NAME" and token.text in ("P", "CI") and self.peek(1).text == "(":
            return self._parse_projective(self.advance())
        token = self.expect_reference("空间")
        return Name(token.text, token.column)

    def parse_bundle_term(self) -> BundleTerm:
        column = self.peek().column
        multiplicity = 1
        if self.peek().kind == "NUMBER":
            multiplicity = self.expect_int()
            self.expect_op("*")
            if multiplicity < 1:
                raise ScriptSyntaxError(f"重数必须是正整数: {multiplicity}", self.line, column)
        token = self.expect_name("丛的加项")
        if token.text == "O":
            self.expect_op("(")
            twist = self.expect_int(signed=True)
            self.expect_op(")")
            return BundleTerm("line", multiplicity, twist, None, column)
        if token.text == "dual":
            self.expect_op("(")
            name = self.expect_reference("丛名").text
            self.expect_op(")")
            return BundleTerm("dual", multiplicity, None, name, column)
        if token.text in RESERVED:
            raise self.error(f"这里需要丛的加项，遇到保留字 {token.text}", token)
        return BundleTerm("bundle", multiplicity, None, token.text, column)

    def parse_orth_form(self):
        token = self.peek()
        if token.kind == "NAME" and self.peek(1).text == "(":
            if token.text == "hyperbolic":
                self.advance()
                self.expect_op("(")
                bundle = self.expect_reference("丛名").text
                sign = 1
                if self.accept_op(","):
                    sign_token = self.peek()
                    sign = self.expect_int(signed=True)
                    if sign not in (1, -1):
                        raise self.error(f"定向符号必须是 1 或 -1: {sign}", sign_token)
                self.expect_op(")")
                return HyperbolicForm(bundle, sign, token.column)
            if token.text == "reduce":
                self.advance()
                self.expect_op("(")
                orth = self.expect_reference("正交丛名").text
                self.expect_op(";")
                labels = self.parse_labels()
                self.expect_op(")")
                return OrthReduceForm(orth, labels, token.column)
            raise self.error(f"未知的正交丛构造 {token.text}", token)
        parts = [self.expect_reference("正交丛名").text]
        while self.accept_op("+"):
            parts.append(self.expect_reference("正交丛名").text)
        return OrthSumForm(tuple(parts), token.column)

    def parse_section_form(self) -> SectionForm:
        token = self.expect_keyword("section")
        self.expect_op("(")
        target = self.expect_reference("丛或正交丛名").text
        self.expect_op(";")
        labels = self.parse_labels()
        self.expect_op(")")
        return SectionForm(target, labels, token.column)

    def parse_labels(self) -> Tuple[Label, ...]:
        """idx, ..., dual idx（可以为空）"""
        labels: List[Label] = []
        if self.at_op(")"):
            return ()
        while True:
            if self.accept_keyword("dual"):
                labels.append((DUAL, self.expect_int()))
            else:
                labels.append((POSITIVE, self.expect_int()))
            if not self.accept_op(","):
                break
        return tuple(labels)

    # ------------------------------------------------------------------
    # 表达式
    # ------------------------------------------------------------------

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self.at_op("+") or self.at_op("-"):
            op = self.advance()
            node = BinaryOp(op.text, node, self.parse_term(), op.column)
        return node

    def _starts_implicit_factor(self, token: Token) -> bool:
        if token.kind == "NAME":
            return token.text not in KEYWORDS
        return token.kind == "OP" and token.text == "("

    def parse_term(self) -> Expr:
        node = self.parse_unary()
        last_is_number = _is_number(node)
        while True:
            token = self.peek()
            if self.at_op("*") or self.at_op("/"):
                self.advance()
                right = self.parse_unary()
                node = BinaryOp(token.text, node, right, token.column)
                last_is_number = isinstance(right, Number)
            elif last_is_number and self._starts_implicit_factor(token):
                # 3H^2 = 3*(H^2)
                node = BinaryOp("*", node, self.parse_power(), token.column)
                last_is_number = False
            else:
                return node

    def parse_unary(self) -> Expr:
        if self.at_op("-"):
            token = self.advance()
            return UnaryMinus(self.parse_unary(), token.column)
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        if self.at_op("^"):
            token = self.advance()
            return BinaryOp("^", base, self.parse_unary(), token.column)
        return base

    def parse_atom(self) -> Expr:
        token = self.peek()
        if token.kind == "NUMBER":
            self.advance()
            return Number(Fraction(int(token.text)), token.column)
        if self.accept_op("("):
            node = self.parse_expr()
            self.expect_op(")")
            return node
        if token.kind == "NAME":
            self.advance()
            if self.at_op("("):
                return self._parse_call(token)
            if token.text in KEYWORDS:
                raise self.error(f"意外的关键字 {token.text}", token)
            return Name(token.text, token.column)
        raise self.error(f"这里需要表达式，遇到 {self._describe(token)}", token)

    def _parse_call(self, token: Token) -> Call:
        name = token.text
        if name not in SIGNATURES:
            raise self.error(f"未知的函数 {name}", token)
        self.expect_op("(")
        args: List[Expr] = []
        if not self.at_op(")") and not self.at_op(";"):
            args.append(self.parse_expr())
            while self.accept_op(","):
                args.append(self.parse_expr())
        labels: Tuple[Label, ...] = ()
        has_labels = False
        if self.accept_op(";"):
            has_labels = True
            labels = self.parse_labels()
        self.expect_op(")")

        signature = SIGNATURES[name]
        if not signature.min_args <= len(args) <= signature.max_args:
            raise self.error(f"{name} 需要 {signature.describe()}，收到 {len(args)} 个", token)
        if has_labels and not signature.labels:
            raise self.error(f"{name} 不接受标签列表", token)
        if signature.labels and not has_labels:
            raise self.error(f"{name} 需要 '; 标签' 形式的标签列表", token)
        return Call(name, tuple(args), labels, token.column)


# ----------------------------------------------------------------------
# 静态名字检查
# ----------------------------------------------------------------------


class _NameChecker:
    """按声明顺序检查引用"""

    def __init__(self):
        self.declared: Dict[str, Tuple[str, int]] = {}

    def require(self, statement: Statement, name: str, kinds: Iterable[str], column: int) -> None:
        kinds = tuple(kinds)
        if name not in self.declared:
            raise ScriptSyntaxError(f"未声明的名字 {name}", statement.line, column)
        kind, line = self.declared[name]
        if kind not in kinds:
            raise ScriptSyntaxError(
                f"{name} 是 {kind}（第 {line} 行声明），这里需要 {' 或 '.join(kinds)}",
                statement.line,
                column,
            )

    def walk(self, statement: Statement, expr: Expr) -> None:
        if isinstance(expr, Name):
            if expr.name not in self.declared and not is_generator_symbol(expr.name):
                raise ScriptSyntaxError(f"未声明的名字 {expr.name}", statement.line, expr.column)
        elif isinstance(expr, UnaryMinus):
            self.walk(statement, expr.operand)
        elif isinstance(expr, BinaryOp):
            self.walk(statement, expr.left)
            self.walk(statement, expr.right)
        elif isinstance(expr, Call):
            for i, arg in enumerate(expr.args):
                if (expr.function, i) == LAW_ARGUMENT:
                    if not isinstance(arg, Name):
                        raise ScriptSyntaxError(
                            "sqrt_h 的第二个参数必须是形式群律的名字", statement.line, expr.column
                        )
                    continue
                self.walk(statement, arg)

    def space_ref(self, statement: Statement, ref: SpaceRef) -> None:
        if isinstance(ref, Name):
            self.require(statement, ref.name, [StatementKind.SPACE], ref.column)

    def check(self, statement: Statement) -> None:
        S = StatementKind
        if isinstance(statement, SpaceDecl):
            form = statement.form
            if isinstance(form, SubspaceForm):
                self.require(statement, form.parent, [S.SPACE], form.column)
            elif isinstance(form, BlowupForm):
                self.require(statement, form.ambient, [S.SPACE], form.column)
                if form.normal is None:
                    self.require(statement, form.center, [S.SECTION], form.column)
                else:
                    self.require(statement, form.center, [S.SPACE], form.column)
                    self.require(statement, form.normal, [S.BUNDLE], form.column)
        elif isinstance(statement, BundleDecl):
            for term in statement.terms:
                if term.name is not None:
                    self.require(statement, term.name, [S.BUNDLE], term.column)
            self.space_ref(statement, statement.base)
        elif isinstance(statement, OrthDecl):
            form = statement.form
            if isinstance(form, HyperbolicForm):
                self.require(statement, form.bundle, [S.BUNDLE], form.column)
            elif isinstance(form, OrthReduceForm):
                self.require(statement, form.orth, [S.ORTH], form.column)
            else:
                for part in form.parts:
                    self.require(statement, part, [S.ORTH], form.column)
        elif isinstance(statement, SectionDecl):
            self.require(statement, statement.form.target, [S.BUNDLE, S.ORTH], statement.form.column)
        elif isinstance(statement, (ClassDecl, PrintStmt)):
            self.walk(statement, statement.expr)
        elif isinstance(statement, CheckStmt):
            self.walk(statement, statement.lhs)
            self.walk(statement, statement.rhs)
        elif isinstance(statement, IntegrateStmt):
            self.walk(statement, statement.expr)
            self.space_ref(statement, statement.space)

        if statement.kind in S.DECLARATIONS:
            if statement.name in self.declared:
                _, line = self.declared[statement.name]
                raise ScriptSyntaxError(
                    f"名字 {statement.name} 已在第 {line} 行声明，不能重复赋值", statement.line
                )
            self.declared[statement.name] = (statement.kind, statement.line)


def parse_line(raw: str, line: int) -> Optional[Statement]:
    """解析一行；空行与纯注释行返回 None"""
    code = strip_comment(raw)
    if not code.strip():
        return None
    parser = _LineParser(tokenize(code, line), line, code.strip())
    return parser.parse_statement()


def parse(text: str) -> Script:
    """
    解析整个脚本

    Raises:
        ScriptSyntaxError: 第一个语法或名字错误（消息以 "line N:" 开头）
    """
    statements: List[Statement] = []
    checker = _NameChecker()
    for number, raw in enumerate(text.splitlines(), start=1):
        statement = parse_line(raw, number)
        if statement is None:
            continue
        checker.check(statement)
        statements.append(statement)
    logger.debug(f"解析完成: {len(statements)} 条语句")
    return Script(tuple(statements))
