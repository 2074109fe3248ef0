#include "gilliant/while_parse.hpp"

#include "gilliant/while_memory.hpp"

#include <cctype>
#include <cstring>

namespace gilliant::wl {

namespace {

enum class Tok {
    Ident,
    LVar,
    Number,
    String,
    Punct,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

const std::set<std::string> kKeywords = {
    "proc",   "skip",   "if",     "else", "while",  "return", "assume", "assert",
    "dispose", "new",   "fold",   "unfold", "speccall", "with", "def",  "spec",
    "pred",   "emp",    "true",   "false", "not",   "and",    "or",     "hd",
    "tl",     "len",    "nth",    "cell"};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1;
    int col = 1;
    std::vector<Token> tokens;

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void err(const std::string& what) { throw ParseError(line, col, what); }

    char peek(size_t off = 0) const { return pos + off < src.size() ? src[pos + off] : '\0'; }

    char take() {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void push(Tok k, std::string text, int l, int c) { tokens.push_back({k, std::move(text), l, c}); }

    void run() {
        while (pos < src.size()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                take();
                continue;
            }
            if (c == '/' && peek(1) == '/') {
                while (pos < src.size() && peek() != '\n') take();
                continue;
            }
            if (c == '/' && peek(1) == '*') {
                take();
                take();
                while (pos < src.size() && !(peek() == '*' && peek(1) == '/')) take();
                if (pos >= src.size()) err("unterminated comment");
                take();
                take();
                continue;
            }
            int l = line, cl = col;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string id;
                while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                    id += take();
                push(Tok::Ident, id, l, cl);
                continue;
            }
            if (c == '#') {
                std::string id;
                id += take();
                while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                    id += take();
                if (id.size() == 1) err("empty logical variable name");
                push(Tok::LVar, id, l, cl);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string n;
                while (std::isdigit(static_cast<unsigned char>(peek()))) n += take();
                if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                    n += take();
                    while (std::isdigit(static_cast<unsigned char>(peek()))) n += take();
                }
                push(Tok::Number, n, l, cl);
                continue;
            }
            if (c == '"') {
                take();
                std::string s;
                while (pos < src.size() && peek() != '"') {
                    char d = take();
                    if (d == '\\' && pos < src.size()) {
                        char e = take();
                        if (e == 'n')
                            s += '\n';
                        else
                            s += e;
                    } else {
                        s += d;
                    }
                }
                if (pos >= src.size()) err("unterminated string");
                take();
                push(Tok::String, s, l, cl);
                continue;
            }
            // multi-char punctuation, longest first
            auto tryPunct = [&](const char* p) {
                size_t n = strlen(p);
                if (src.compare(pos, n, p) == 0) {
                    for (size_t i = 0; i < n; ++i) take();
                    push(Tok::Punct, p, l, cl);
                    return true;
                }
                return false;
            };
            if (tryPunct("[[") || tryPunct("]]") || tryPunct(":=") || tryPunct("<=") ||
                tryPunct("::") || tryPunct("++"))
                continue;
            std::string p(1, take());
            push(Tok::Punct, p, l, cl);
        }
        push(Tok::End, "", line, col);
    }
};

struct Parser {
    std::vector<Token> toks;
    size_t pos = 0;

    explicit Parser(std::vector<Token> t) : toks(std::move(t)) {}

    const Token& peek(size_t off = 0) const {
        size_t i = pos + off;
        return i < toks.size() ? toks[i] : toks.back();
    }

    [[noreturn]] void err(const std::string& what) const {
        const Token& t = peek();
        throw ParseError(t.line, t.col, what + " (got '" + (t.kind == Tok::End ? "<eof>" : t.text) +
                                            "')");
    }

    Token take() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

    bool at(Tok k, const std::string& text = "") const {
        return peek().kind == k && (text.empty() || peek().text == text);
    }
    bool atIdent(const std::string& id) const { return at(Tok::Ident, id); }

    void expect(Tok k, const std::string& text) {
        if (!at(k, text)) err("expected '" + text + "'");
        take();
    }

    std::string expectIdent(const std::string& what) {
        if (peek().kind != Tok::Ident) err("expected " + what);
        std::string id = take().text;
        if (kKeywords.count(id)) throw ParseError(peek().line, peek().col, "'" + id + "' is a keyword");
        return id;
    }

    // ---- expressions ----------------------------------------------------

    Expr parseExpr() { return parseOr(); }

    Expr parseOr() {
        Expr e = parseAnd();
        while (atIdent("or")) {
            take();
            e = Expr::binop(BinOpKind::Or, e, parseAnd());
        }
        return e;
    }

    Expr parseAnd() {
        Expr e = parseNot();
        while (atIdent("and")) {
            take();
            e = Expr::binop(BinOpKind::And, e, parseNot());
        }
        return e;
    }

    Expr parseNot() {
        if (atIdent("not")) {
            take();
            return Expr::unop(UnOpKind::Not, parseNot());
        }
        return parseCmp();
    }

    Expr parseCmp() {
        Expr e = parseConsLevel();
        for (;;) {
            if (at(Tok::Punct, "=")) {
                take();
                e = Expr::binop(BinOpKind::Eq, e, parseConsLevel());
            } else if (at(Tok::Punct, "<=")) {
                take();
                e = Expr::binop(BinOpKind::Leq, e, parseConsLevel());
            } else if (at(Tok::Punct, "<")) {
                take();
                e = Expr::binop(BinOpKind::Lt, e, parseConsLevel());
            } else if (at(Tok::Punct, "!")) {
                // '!=' convenience: not (a = b)
                if (peek(1).kind == Tok::Punct && peek(1).text == "=") {
                    take();
                    take();
                    e = Expr::unop(UnOpKind::Not, Expr::binop(BinOpKind::Eq, e, parseConsLevel()));
                } else {
                    err("unexpected '!'");
                }
            } else {
                break;
            }
        }
        return e;
    }

    // right-associative list building: ::, @ (list concat), ++ (string concat)
    Expr parseConsLevel() {
        Expr e = parseAdd();
        if (at(Tok::Punct, "::")) {
            take();
            return Expr::binop(BinOpKind::Cons, e, parseConsLevel());
        }
        if (at(Tok::Punct, "@")) {
            take();
            return Expr::binop(BinOpKind::LCat, e, parseConsLevel());
        }
        if (at(Tok::Punct, "++")) {
            take();
            return Expr::binop(BinOpKind::SCat, e, parseConsLevel());
        }
        return e;
    }

    Expr parseAdd() {
        Expr e = parseMul();
        for (;;) {
            if (at(Tok::Punct, "+")) {
                take();
                e = Expr::binop(BinOpKind::Add, e, parseMul());
            } else if (at(Tok::Punct, "-")) {
                take();
                e = Expr::binop(BinOpKind::Sub, e, parseMul());
            } else {
                break;
            }
        }
        return e;
    }

    Expr parseMul() {
        Expr e = parseUnary();
        for (;;) {
            if (at(Tok::Punct, "*")) {
                take();
                e = Expr::binop(BinOpKind::Mul, e, parseUnary());
            } else if (at(Tok::Punct, "/")) {
                take();
                e = Expr::binop(BinOpKind::Div, e, parseUnary());
            } else {
                break;
            }
        }
        return e;
    }

    Expr parseUnary() {
        if (at(Tok::Punct, "-")) {
            take();
            return Expr::unop(UnOpKind::Neg, parseUnary());
        }
        if (atIdent("hd")) {
            take();
            return Expr::unop(UnOpKind::Head, parseUnary());
        }
        if (atIdent("tl")) {
            take();
            return Expr::unop(UnOpKind::Tail, parseUnary());
        }
        if (atIdent("len")) {
            take();
            return Expr::unop(UnOpKind::Len, parseUnary());
        }
        return parsePrimary();
    }

    Expr parsePrimary() {
        if (at(Tok::Number)) {
            std::string n = take().text;
            auto dot = n.find('.');
            if (dot == std::string::npos) return Expr::lit(GilValue::num(Number(Rational(n))));
            std::string digits = n.substr(0, dot) + n.substr(dot + 1);
            Rational denom = 1;
            for (size_t i = 0; i < n.size() - dot - 1; ++i) denom *= 10;
            return Expr::lit(GilValue::num(Number(Rational(digits) / denom)));
        }
        if (at(Tok::String)) return Expr::lit(GilValue::str(take().text));
        if (at(Tok::LVar)) return Expr::lvar(take().text);
        if (atIdent("true")) {
            take();
            return Expr::lit(GilValue::boolean(true));
        }
        if (atIdent("false")) {
            take();
            return Expr::lit(GilValue::boolean(false));
        }
        if (atIdent("nth")) {
            take();
            expect(Tok::Punct, "(");
            Expr a = parseExpr();
            expect(Tok::Punct, ",");
            Expr b = parseExpr();
            expect(Tok::Punct, ")");
            return Expr::binop(BinOpKind::Nth, a, b);
        }
        if (at(Tok::Punct, "[")) {
            take();
            std::vector<Expr> items;
            if (!at(Tok::Punct, "]")) {
                items.push_back(parseExpr());
                while (at(Tok::Punct, ",")) {
                    take();
                    items.push_back(parseExpr());
                }
            }
            expect(Tok::Punct, "]");
            Expr out = Expr::lit(GilValue::list({}));
            for (auto it = items.rbegin(); it != items.rend(); ++it)
                out = Expr::binop(BinOpKind::Cons, *it, out);
            return simplify(out);
        }
        if (at(Tok::Punct, "(")) {
            take();
            Expr e = parseExpr();
            expect(Tok::Punct, ")");
            return e;
        }
        if (at(Tok::Ident)) {
            if (kKeywords.count(peek().text)) err("unexpected keyword in expression");
            return Expr::pvar(take().text);
        }
        err("expected an expression");
    }

    // ---- assertions ------------------------------------------------------

    Assertion parseAssertion() {
        Assertion a = parseATerm();
        while (at(Tok::Punct, "*")) {
            take();
            a = Assertion::star(a, parseATerm());
        }
        return a;
    }

    Assertion parseATerm() {
        if (atIdent("emp")) {
            take();
            return Assertion::emp();
        }
        if (atIdent("cell")) {
            take();
            expect(Tok::Punct, "(");
            Expr loc = parseExpr();
            expect(Tok::Punct, ",");
            Expr prop;
            if (at(Tok::String))
                prop = Expr::lit(GilValue::str(take().text));
            else if (at(Tok::Ident) && !kKeywords.count(peek().text))
                prop = Expr::lit(GilValue::str(take().text));
            else
                err("expected a property name");
            expect(Tok::Punct, ",");
            Expr val = parseExpr();
            expect(Tok::Punct, ")");
            Expr arg = Expr::binop(
                BinOpKind::Cons, loc,
                Expr::binop(BinOpKind::Cons, prop,
                            Expr::binop(BinOpKind::Cons, val, Expr::lit(GilValue::list({})))));
            return Assertion::core(kCellPred, simplify(arg));
        }
        if (at(Tok::Ident) && !kKeywords.count(peek().text) && peek(1).kind == Tok::Punct &&
            peek(1).text == "(") {
            std::string name = take().text;
            expect(Tok::Punct, "(");
            Expr arg = parseExpr();
            expect(Tok::Punct, ")");
            return Assertion::user(name, arg);
        }
        if (at(Tok::Punct, "(")) {
            take();
            Expr e = parseExpr();
            expect(Tok::Punct, ")");
            return Assertion::pure(e);
        }
        err("expected an assertion");
    }

    // ---- statements ------------------------------------------------------

    std::vector<std::pair<std::string, Expr>> parseBindings() {
        std::vector<std::pair<std::string, Expr>> out;
        for (;;) {
            if (peek().kind != Tok::LVar) err("expected a logical variable binding");
            std::string lv = take().text;
            expect(Tok::Punct, ":");
            out.emplace_back(lv, parseExpr());
            if (!at(Tok::Punct, ",")) break;
            take();
        }
        return out;
    }

    StmtPtr parseBlock() {
        expect(Tok::Punct, "{");
        StmtPtr body = nullptr;
        while (!at(Tok::Punct, "}")) {
            StmtPtr s = parseStmt();
            body = body ? WhileStmt::seq(body, s) : s;
        }
        take();
        return body ? body : WhileStmt::skip();
    }

    StmtPtr parseStmt() {
        if (atIdent("skip")) {
            take();
            expect(Tok::Punct, ";");
            return WhileStmt::skip();
        }
        if (atIdent("if")) {
            take();
            expect(Tok::Punct, "(");
            Expr cond = parseExpr();
            expect(Tok::Punct, ")");
            StmtPtr thenS = parseBlock();
            StmtPtr elseS = WhileStmt::skip();
            if (atIdent("else")) {
                take();
                elseS = parseBlock();
            }
            return WhileStmt::ifElse(cond, thenS, elseS);
        }
        if (atIdent("while")) {
            take();
            expect(Tok::Punct, "(");
            Expr cond = parseExpr();
            expect(Tok::Punct, ")");
            return WhileStmt::whileLoop(cond, parseBlock());
        }
        if (atIdent("return")) {
            take();
            Expr e = parseExpr();
            expect(Tok::Punct, ";");
            return WhileStmt::ret(e);
        }
        if (atIdent("assume") || atIdent("assert")) {
            bool isAssume = take().text == "assume";
            expect(Tok::Punct, "(");
            Expr e = parseExpr();
            expect(Tok::Punct, ")");
            expect(Tok::Punct, ";");
            return isAssume ? WhileStmt::assume(e) : WhileStmt::assertStmt(e);
        }
        if (atIdent("dispose")) {
            take();
            expect(Tok::Punct, "(");
            Expr e = parseExpr();
            expect(Tok::Punct, ")");
            expect(Tok::Punct, ";");
            return WhileStmt::dispose(e);
        }
        if (atIdent("fold")) {
            take();
            std::string pred = expectIdent("a predicate name");
            expect(Tok::Punct, "(");
            Expr arg = parseExpr();
            expect(Tok::Punct, ")");
            int def = 0;
            if (atIdent("def")) {
                take();
                if (peek().kind != Tok::Number) err("expected a definition index");
                def = std::stoi(take().text);
            }
            std::vector<std::pair<std::string, Expr>> binds;
            if (atIdent("with")) {
                take();
                binds = parseBindings();
            }
            expect(Tok::Punct, ";");
            return WhileStmt::fold(pred, arg, def, std::move(binds));
        }
        if (atIdent("unfold")) {
            take();
            std::string pred = expectIdent("a predicate name");
            expect(Tok::Punct, "(");
            Expr arg = parseExpr();
            expect(Tok::Punct, ")");
            expect(Tok::Punct, ";");
            return WhileStmt::unfold(pred, arg);
        }
        if (at(Tok::Ident) && !kKeywords.count(peek().text) && peek(1).kind == Tok::Punct &&
            peek(1).text == ":=") {
            std::string x = take().text;
            take();  // :=
            if (atIdent("new")) {
                take();
                expect(Tok::Punct, "{");
                std::vector<std::pair<std::string, Expr>> fields;
                if (!at(Tok::Punct, "}")) {
                    for (;;) {
                        std::string prop =
                            at(Tok::String) ? take().text : expectIdent("a property name");
                        expect(Tok::Punct, ":");
                        fields.emplace_back(prop, parseExpr());
                        if (!at(Tok::Punct, ",")) break;
                        take();
                    }
                }
                expect(Tok::Punct, "}");
                expect(Tok::Punct, ";");
                return WhileStmt::newObj(x, std::move(fields));
            }
            if (atIdent("speccall")) {
                take();
                std::string f = expectIdent("a procedure name");
                expect(Tok::Punct, "(");
                Expr arg = parseExpr();
                expect(Tok::Punct, ")");
                int idx = 0;
                if (atIdent("spec")) {
                    take();
                    if (peek().kind != Tok::Number) err("expected a spec index");
                    idx = std::stoi(take().text);
                }
                std::vector<std::pair<std::string, Expr>> binds;
                if (atIdent("with")) {
                    take();
                    binds = parseBindings();
                }
                expect(Tok::Punct, ";");
                return WhileStmt::specCall(x, f, arg, idx, std::move(binds));
            }
            // direct call: f(e)
            if (at(Tok::Ident) && !kKeywords.count(peek().text) && peek(1).kind == Tok::Punct &&
                peek(1).text == "(") {
                std::string f = take().text;
                take();  // (
                Expr arg = parseExpr();
                expect(Tok::Punct, ")");
                expect(Tok::Punct, ";");
                return WhileStmt::call(x, f, arg);
            }
            Expr e = parseExpr();
            if (at(Tok::Punct, ".")) {
                take();
                std::string prop = at(Tok::String) ? take().text : expectIdent("a property name");
                expect(Tok::Punct, ";");
                return WhileStmt::lookup(x, e, prop);
            }
            expect(Tok::Punct, ";");
            return WhileStmt::assign(x, e);
        }
        // mutate: expr '.' prop ':=' expr ';'
        Expr obj = parseExpr();
        expect(Tok::Punct, ".");
        std::string prop = at(Tok::String) ? take().text : expectIdent("a property name");
        expect(Tok::Punct, ":=");
        Expr val = parseExpr();
        expect(Tok::Punct, ";");
        return WhileStmt::mutate(obj, prop, val);
    }

    // ---- top level ---------------------------------------------------------

    WhileProgram parseProgram() {
        WhileProgram out;
        while (!at(Tok::End)) {
            if (atIdent("proc")) {
                take();
                std::string name = expectIdent("a procedure name");
                expect(Tok::Punct, "(");
                std::string param = expectIdent("a parameter name");
                expect(Tok::Punct, ")");
                StmtPtr body = parseBlock();
                out.procs.push_back({name, param, body});
                continue;
            }
            if (atIdent("pred")) {
                take();
                std::string name = expectIdent("a predicate name");
                expect(Tok::Punct, "(");
                std::string param = expectIdent("a parameter name");
                expect(Tok::Punct, ")");
                expect(Tok::Punct, "{");
                PredicateDef def;
                def.name = name;
                def.param = param;
                def.defs.push_back(parseAssertion());
                while (at(Tok::Punct, "|")) {
                    take();
                    def.defs.push_back(parseAssertion());
                }
                expect(Tok::Punct, "}");
                out.predicates[name] = std::move(def);
                continue;
            }
            if (atIdent("spec")) {
                take();
                Spec sp;
                sp.proc = expectIdent("a procedure name");
                expect(Tok::Punct, "(");
                sp.param = expectIdent("a parameter name");
                expect(Tok::Punct, ")");
                expect(Tok::Punct, "[[");
                sp.pre = parseAssertion();
                expect(Tok::Punct, "]]");
                expect(Tok::Punct, "[[");
                sp.post = parseAssertion();
                expect(Tok::Punct, ";");
                sp.ret = parseExpr();
                expect(Tok::Punct, "]]");
                out.specs[sp.proc].push_back(std::move(sp));
                continue;
            }
            err("expected 'proc', 'pred', or 'spec'");
        }
        return out;
    }
};

}  // namespace

WhileProgram parseWhile(const std::string& source) {
    Lexer lex(source);
    lex.run();
    Parser p(std::move(lex.tokens));
    return p.parseProgram();
}

Expr parseWhileExpr(const std::string& source) {
    Lexer lex(source);
    lex.run();
    Parser p(std::move(lex.tokens));
    Expr e = p.parseExpr();
    if (!p.at(Tok::End)) p.err("trailing input after expression");
    return e;
}

}  // namespace gilliant::wl
