#include "chorc/syntax.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace chorc {

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + what),
      line(line),
      column(column) {}

namespace {

enum class Tok {
  End,
  Ident,
  Int,
  Str,
  LBrace,
  RBrace,
  LBrack,
  RBrack,
  LParen,
  RParen,
  Comma,
  Semi,
  Dot,
  Colon,
  Arrow,    // ->
  Par,      // |
  ParRt,    // |>
  Amp,      // &
  Bang,     // !
  Quest,    // ?
  SelOp,    // (+)
  Eq,       // =
  Lt,       // <
  Plus,
  Minus,
  Star,
  Concat,  // ++
  KwIf,
  KwThen,
  KwElse,
  KwDef,
  KwIn,
  KwAnd,
  KwOr,
  KwNot,
  KwTrue,
  KwFalse,
  KwUnit,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t int_value = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(tok_.line, tok_.column, what);
  }

 private:
  void advance() {
    skip_trivia();
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = column_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        bump();
      tok_.text = std::string(src_.substr(start, pos_ - start));
      tok_.kind = keyword(tok_.text);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
      tok_.text = std::string(src_.substr(start, pos_ - start));
      tok_.kind = Tok::Int;
      tok_.int_value = std::stoll(tok_.text);
      return;
    }
    if (c == '"') {
      bump();
      std::string out;
      while (true) {
        if (pos_ >= src_.size())
          throw ParseError(tok_.line, tok_.column, "unterminated string");
        char d = src_[pos_];
        bump();
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= src_.size())
            throw ParseError(tok_.line, tok_.column, "unterminated string");
          char e = src_[pos_];
          bump();
          switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default:
              throw ParseError(line_, column_, "unknown escape sequence");
          }
        } else {
          out += d;
        }
      }
      tok_.kind = Tok::Str;
      tok_.text = std::move(out);
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two('-', '>')) {
      bump();
      bump();
      tok_.kind = Tok::Arrow;
      return;
    }
    if (two('|', '>')) {
      bump();
      bump();
      tok_.kind = Tok::ParRt;
      return;
    }
    if (two('+', '+')) {
      bump();
      bump();
      tok_.kind = Tok::Concat;
      return;
    }
    if (c == '(' && pos_ + 2 < src_.size() && src_[pos_ + 1] == '+' &&
        src_[pos_ + 2] == ')') {
      bump();
      bump();
      bump();
      tok_.kind = Tok::SelOp;
      return;
    }
    bump();
    switch (c) {
      case '{': tok_.kind = Tok::LBrace; return;
      case '}': tok_.kind = Tok::RBrace; return;
      case '[': tok_.kind = Tok::LBrack; return;
      case ']': tok_.kind = Tok::RBrack; return;
      case '(': tok_.kind = Tok::LParen; return;
      case ')': tok_.kind = Tok::RParen; return;
      case ',': tok_.kind = Tok::Comma; return;
      case ';': tok_.kind = Tok::Semi; return;
      case '.': tok_.kind = Tok::Dot; return;
      case ':': tok_.kind = Tok::Colon; return;
      case '|': tok_.kind = Tok::Par; return;
      case '&': tok_.kind = Tok::Amp; return;
      case '!': tok_.kind = Tok::Bang; return;
      case '?': tok_.kind = Tok::Quest; return;
      case '=': tok_.kind = Tok::Eq; return;
      case '<': tok_.kind = Tok::Lt; return;
      case '+': tok_.kind = Tok::Plus; return;
      case '-': tok_.kind = Tok::Minus; return;
      case '*': tok_.kind = Tok::Star; return;
      default:
        throw ParseError(tok_.line, tok_.column,
                         std::string("unexpected character '") + c + "'");
    }
  }

  static Tok keyword(const std::string& s) {
    if (s == "if") return Tok::KwIf;
    if (s == "then") return Tok::KwThen;
    if (s == "else") return Tok::KwElse;
    if (s == "def") return Tok::KwDef;
    if (s == "in") return Tok::KwIn;
    if (s == "and") return Tok::KwAnd;
    if (s == "or") return Tok::KwOr;
    if (s == "not") return Tok::KwNot;
    if (s == "true") return Tok::KwTrue;
    if (s == "false") return Tok::KwFalse;
    if (s == "unit") return Tok::KwUnit;
    return Tok::Ident;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  ChorPtr chor_file() {
    ChorPtr c = chor();
    expect(Tok::End, "expected end of input");
    return c;
  }

  Network network_file() {
    Network n;
    if (peek_is(Tok::Int) && lex_.peek().int_value == 0) {
      lex_.take();
      expect(Tok::End, "expected end of input");
      return n;
    }
    while (true) {
      Token name = expect(Tok::Ident, "expected process name");
      expect(Tok::ParRt, "expected '|>'");
      BehaviourPtr b = behaviour();
      if (!n.procs.emplace(ProcName(name.text), b).second)
        throw ParseError(name.line, name.column,
                         "duplicate process name '" + name.text + "'");
      if (!accept(Tok::Par)) break;
    }
    expect(Tok::End, "expected end of input");
    return n;
  }

  State state_file() {
    State::Cells cells;
    while (!peek_is(Tok::End)) {
      Token p = expect(Tok::Ident, "expected process name");
      expect(Tok::Dot, "expected '.'");
      Token x = expect(Tok::Ident, "expected variable name");
      expect(Tok::Eq, "expected '='");
      Value v = value_literal();
      auto key = std::pair{ProcName(p.text), VarName(x.text)};
      if (!cells.emplace(key, std::move(v)).second)
        throw ParseError(p.line, p.column,
                         "duplicate state entry for " + p.text + "." + x.text);
    }
    return State(std::move(cells));
  }

 private:
  bool peek_is(Tok k) const { return lex_.peek().kind == k; }

  bool accept(Tok k) {
    if (!peek_is(k)) return false;
    lex_.take();
    return true;
  }

  Token expect(Tok k, const std::string& what) {
    if (!peek_is(k)) lex_.fail(what);
    return lex_.take();
  }

  // ---- choreographies

  ChorPtr chor() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Int:
        if (t.int_value == 0) {
          lex_.take();
          return Chor::end();
        }
        lex_.fail("expected a statement");
      case Tok::LBrace: return group_statement();
      case Tok::KwIf: return conditional();
      case Tok::KwDef: return definition();
      case Tok::Ident: return ident_statement();
      default: lex_.fail("expected a statement");
    }
  }

  ChorPtr continuation() {
    if (accept(Tok::Semi)) return chor();
    return Chor::end();
  }

  ChorPtr group_statement() {
    Token open = lex_.take();  // '{'
    if (peek_is(Tok::RBrace))
      throw ParseError(open.line, open.column, "empty group");
    Token first = expect(Tok::Ident, "expected process name");
    if (peek_is(Tok::Dot)) {
      std::vector<Com> coms;
      coms.push_back(com_rest(first));
      while (accept(Tok::Comma)) {
        Token name = expect(Tok::Ident, "expected process name");
        if (!peek_is(Tok::Dot))
          lex_.fail("expected a communication (mixed group)");
        coms.push_back(com_rest(name));
      }
      expect(Tok::RBrace, "expected '}'");
      check_dups(coms, open);
      return Chor::mcom(Multicom::of(std::move(coms)), continuation());
    }
    std::vector<Sel> sels;
    sels.push_back(sel_rest(first));
    while (accept(Tok::Comma)) {
      Token name = expect(Tok::Ident, "expected process name");
      if (!peek_is(Tok::Arrow)) lex_.fail("expected a selection (mixed group)");
      sels.push_back(sel_rest(name));
    }
    expect(Tok::RBrace, "expected '}'");
    check_dups(sels, open);
    return Chor::msel(Multisel::of(std::move(sels)), continuation());
  }

  template <class T>
  void check_dups(std::vector<T> elems, const Token& at) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j)
        if (elems[i] == elems[j])
          throw ParseError(at.line, at.column,
                           "duplicate group element " + to_text(elems[i]));
  }

  Com com_rest(const Token& sender) {
    expect(Tok::Dot, "expected '.'");
    ExprPtr e = expression();
    expect(Tok::Arrow, "expected '->'");
    Token recv = expect(Tok::Ident, "expected process name");
    expect(Tok::Dot, "expected '.'");
    Token var = expect(Tok::Ident, "expected variable name");
    return Com{ProcName(sender.text), e, ProcName(recv.text),
               VarName(var.text)};
  }

  Sel sel_rest(const Token& sender) {
    expect(Tok::Arrow, "expected '->'");
    Token recv = expect(Tok::Ident, "expected process name");
    expect(Tok::LBrack, "expected '['");
    Token label = expect(Tok::Ident, "expected label");
    expect(Tok::RBrack, "expected ']'");
    return Sel{ProcName(sender.text), ProcName(recv.text), Label(label.text)};
  }

  ChorPtr ident_statement() {
    Token name = lex_.take();
    if (peek_is(Tok::Dot)) {
      Com c = com_rest(name);
      return Chor::mcom(Multicom::of({std::move(c)}), continuation());
    }
    if (peek_is(Tok::Arrow)) {
      Sel s = sel_rest(name);
      return Chor::msel(Multisel::of({std::move(s)}), continuation());
    }
    std::set<ProcName> procs = opt_annotation();
    return Chor::call(RecVar(name.text), std::move(procs));
  }

  ChorPtr conditional() {
    lex_.take();  // 'if'
    Token proc = expect(Tok::Ident, "expected process name");
    expect(Tok::Dot, "expected '.'");
    ExprPtr guard = expression();
    expect(Tok::KwThen, "expected 'then'");
    expect(Tok::LBrace, "expected '{'");
    ChorPtr then_branch = chor();
    expect(Tok::RBrace, "expected '}'");
    expect(Tok::KwElse, "expected 'else'");
    expect(Tok::LBrace, "expected '{'");
    ChorPtr else_branch = chor();
    expect(Tok::RBrace, "expected '}'");
    return Chor::cond(ProcName(proc.text), guard, then_branch, else_branch);
  }

  ChorPtr definition() {
    lex_.take();  // 'def'
    Token name = expect(Tok::Ident, "expected procedure name");
    std::set<ProcName> procs = opt_annotation();
    expect(Tok::Eq, "expected '='");
    expect(Tok::LBrace, "expected '{'");
    ChorPtr body = chor();
    expect(Tok::RBrace, "expected '}'");
    expect(Tok::KwIn, "expected 'in'");
    expect(Tok::LBrace, "expected '{'");
    ChorPtr scope = chor();
    expect(Tok::RBrace, "expected '}'");
    return Chor::rec(RecVar(name.text), std::move(procs), body, scope);
  }

  std::set<ProcName> opt_annotation() {
    std::set<ProcName> procs;
    if (accept(Tok::LBrack)) {
      if (!peek_is(Tok::RBrack)) {
        do {
          Token p = expect(Tok::Ident, "expected process name");
          procs.insert(ProcName(p.text));
        } while (accept(Tok::Comma));
      }
      expect(Tok::RBrack, "expected ']'");
    }
    return procs;
  }

  // ---- expressions (precedence: or < and < (<,=) < (+,-,++) < * < not)

  ExprPtr expression() { return expr_or(); }

  ExprPtr expr_or() {
    ExprPtr lhs = expr_and();
    while (accept(Tok::KwOr)) lhs = Expr::bin(BinOpKind::Or, lhs, expr_and());
    return lhs;
  }

  ExprPtr expr_and() {
    ExprPtr lhs = expr_cmp();
    while (accept(Tok::KwAnd))
      lhs = Expr::bin(BinOpKind::And, lhs, expr_cmp());
    return lhs;
  }

  ExprPtr expr_cmp() {
    ExprPtr lhs = expr_add();
    while (true) {
      if (accept(Tok::Lt))
        lhs = Expr::bin(BinOpKind::Lt, lhs, expr_add());
      else if (accept(Tok::Eq))
        lhs = Expr::bin(BinOpKind::Eq, lhs, expr_add());
      else
        return lhs;
    }
  }

  ExprPtr expr_add() {
    ExprPtr lhs = expr_mul();
    while (true) {
      if (accept(Tok::Plus))
        lhs = Expr::bin(BinOpKind::Add, lhs, expr_mul());
      else if (accept(Tok::Minus))
        lhs = Expr::bin(BinOpKind::Sub, lhs, expr_mul());
      else if (accept(Tok::Concat))
        lhs = Expr::bin(BinOpKind::Concat, lhs, expr_mul());
      else
        return lhs;
    }
  }

  ExprPtr expr_mul() {
    ExprPtr lhs = expr_unary();
    while (accept(Tok::Star))
      lhs = Expr::bin(BinOpKind::Mul, lhs, expr_unary());
    return lhs;
  }

  ExprPtr expr_unary() {
    if (accept(Tok::KwNot)) return Expr::negation(expr_unary());
    return expr_atom();
  }

  ExprPtr expr_atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Int: {
        Token n = lex_.take();
        return Expr::lit(n.int_value);
      }
      case Tok::Str: {
        Token s = lex_.take();
        return Expr::lit(std::string(s.text));
      }
      case Tok::KwTrue: lex_.take(); return Expr::lit(true);
      case Tok::KwFalse: lex_.take(); return Expr::lit(false);
      case Tok::LParen: {
        lex_.take();
        ExprPtr e = expression();
        expect(Tok::RParen, "expected ')'");
        return e;
      }
      case Tok::Ident: {
        Token name = lex_.take();
        if (accept(Tok::LParen)) {
          std::vector<ExprPtr> args;
          if (!peek_is(Tok::RParen)) {
            do {
              args.push_back(expression());
            } while (accept(Tok::Comma));
          }
          expect(Tok::RParen, "expected ')'");
          return Expr::ctor(name.text, std::move(args));
        }
        return Expr::var(VarName(name.text));
      }
      default: lex_.fail("expected an expression");
    }
  }

  // ---- behaviours

  BehaviourPtr behaviour() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Int:
        if (t.int_value == 0) {
          lex_.take();
          return Behaviour::end();
        }
        lex_.fail("expected a behaviour");
      case Tok::LBrace: return b_group_statement();
      case Tok::KwIf: return b_conditional();
      case Tok::KwDef: return b_definition();
      case Tok::Ident: return b_ident_statement();
      default: lex_.fail("expected a behaviour");
    }
  }

  BehaviourPtr b_continuation() {
    if (accept(Tok::Semi)) return behaviour();
    return Behaviour::end();
  }

  BehaviourPtr b_group_statement() {
    Token open = lex_.take();  // '{'
    if (peek_is(Tok::RBrace))
      throw ParseError(open.line, open.column, "empty group");
    Token first = expect(Tok::Ident, "expected process name");
    if (peek_is(Tok::Bang) || peek_is(Tok::Quest)) {
      std::vector<Theta> thetas;
      thetas.push_back(theta_rest(first));
      while (accept(Tok::Comma)) {
        Token name = expect(Tok::Ident, "expected process name");
        if (!peek_is(Tok::Bang) && !peek_is(Tok::Quest))
          lex_.fail("expected a send or receive (mixed group)");
        thetas.push_back(theta_rest(name));
      }
      expect(Tok::RBrace, "expected '}'");
      check_dups(thetas, open);
      return Behaviour::theta(ThetaGroup::of(std::move(thetas)),
                              b_continuation());
    }
    std::vector<SelAct> sels;
    sels.push_back(selact_rest(first));
    while (accept(Tok::Comma)) {
      Token name = expect(Tok::Ident, "expected process name");
      if (!peek_is(Tok::SelOp)) lex_.fail("expected a selection (mixed group)");
      sels.push_back(selact_rest(name));
    }
    expect(Tok::RBrace, "expected '}'");
    check_dups(sels, open);
    check_sel_targets(sels, open);
    return Behaviour::sel(SelActGroup::of(std::move(sels)), b_continuation());
  }

  void check_sel_targets(const std::vector<SelAct>& sels, const Token& at) {
    for (std::size_t i = 0; i < sels.size(); ++i)
      for (std::size_t j = i + 1; j < sels.size(); ++j)
        if (sels[i].to == sels[j].to)
          throw ParseError(at.line, at.column,
                           "duplicate selection target '" + sels[i].to.value +
                               "' in group");
  }

  Theta theta_rest(const Token& name) {
    if (accept(Tok::Bang)) {
      ExprPtr e = expression();
      return Theta::send(ProcName(name.text), e);
    }
    expect(Tok::Quest, "expected '!' or '?'");
    Token var = expect(Tok::Ident, "expected variable name");
    return Theta::recv(ProcName(name.text), VarName(var.text));
  }

  SelAct selact_rest(const Token& name) {
    expect(Tok::SelOp, "expected '(+)'");
    expect(Tok::LBrack, "expected '['");
    Token label = expect(Tok::Ident, "expected label");
    expect(Tok::RBrack, "expected ']'");
    return SelAct{ProcName(name.text), Label(label.text)};
  }

  BehaviourPtr b_ident_statement() {
    Token name = lex_.take();
    if (peek_is(Tok::Bang) || peek_is(Tok::Quest)) {
      Theta t = theta_rest(name);
      return Behaviour::theta(ThetaGroup::of({std::move(t)}),
                              b_continuation());
    }
    if (peek_is(Tok::SelOp)) {
      SelAct s = selact_rest(name);
      return Behaviour::sel(SelActGroup::of({std::move(s)}),
                            b_continuation());
    }
    if (peek_is(Tok::Amp)) return branch_rest(name);
    return Behaviour::call(RecVar(name.text));
  }

  BehaviourPtr branch_rest(const Token& from) {
    lex_.take();  // '&'
    Token open = expect(Tok::LBrace, "expected '{'");
    std::map<Label, BehaviourPtr> branches;
    do {
      Token label = expect(Tok::Ident, "expected label");
      expect(Tok::Colon, "expected ':'");
      BehaviourPtr b = behaviour();
      if (!branches.emplace(Label(label.text), b).second)
        throw ParseError(open.line, open.column,
                         "duplicate branch label '" + label.text + "'");
    } while (accept(Tok::Comma));
    expect(Tok::RBrace, "expected '}'");
    return Behaviour::branch(ProcName(from.text), std::move(branches));
  }

  BehaviourPtr b_conditional() {
    lex_.take();  // 'if'
    ExprPtr guard = expression();
    expect(Tok::KwThen, "expected 'then'");
    expect(Tok::LBrace, "expected '{'");
    BehaviourPtr then_branch = behaviour();
    expect(Tok::RBrace, "expected '}'");
    expect(Tok::KwElse, "expected 'else'");
    expect(Tok::LBrace, "expected '{'");
    BehaviourPtr else_branch = behaviour();
    expect(Tok::RBrace, "expected '}'");
    return Behaviour::cond(guard, then_branch, else_branch);
  }

  BehaviourPtr b_definition() {
    lex_.take();  // 'def'
    Token name = expect(Tok::Ident, "expected procedure name");
    expect(Tok::Eq, "expected '='");
    expect(Tok::LBrace, "expected '{'");
    BehaviourPtr body = behaviour();
    expect(Tok::RBrace, "expected '}'");
    expect(Tok::KwIn, "expected 'in'");
    expect(Tok::LBrace, "expected '{'");
    BehaviourPtr scope = behaviour();
    expect(Tok::RBrace, "expected '}'");
    return Behaviour::rec(RecVar(name.text), body, scope);
  }

  // ---- state literals

  Value value_literal() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Int: {
        Token n = lex_.take();
        return Value::integer(n.int_value);
      }
      case Tok::Minus: {
        lex_.take();
        Token n = expect(Tok::Int, "expected an integer");
        return Value::integer(-n.int_value);
      }
      case Tok::Str: {
        Token s = lex_.take();
        return Value::str(std::string(s.text));
      }
      case Tok::KwTrue: lex_.take(); return Value::boolean(true);
      case Tok::KwFalse: lex_.take(); return Value::boolean(false);
      case Tok::KwUnit: lex_.take(); return Value::unit();
      case Tok::Ident: {
        Token name = lex_.take();
        expect(Tok::LParen, "expected '('");
        std::vector<Value> args;
        if (!peek_is(Tok::RParen)) {
          do {
            args.push_back(value_literal());
          } while (accept(Tok::Comma));
        }
        expect(Tok::RParen, "expected ')'");
        return Value::tagged(name.text, std::move(args));
      }
      default: lex_.fail("expected a value literal");
    }
  }

  Lexer lex_;
};

}  // namespace

ChorPtr parse_chor(std::string_view text) {
  return Parser(text).chor_file();
}

Network parse_network(std::string_view text) {
  return Parser(text).network_file();
}

State parse_state(std::string_view text) { return Parser(text).state_file(); }

// -------------------------------------------------------------- printers

namespace {

std::string annotation_text(const std::set<ProcName>& procs) {
  if (procs.empty()) return "";
  std::string out = "[";
  bool first = true;
  for (const auto& p : procs) {
    if (!first) out += ", ";
    out += p.value;
    first = false;
  }
  return out + "]";
}

std::string mcom_text(const Multicom& h) {
  if (h.size() == 1) return to_text(h.coms().front());
  std::string out = "{";
  for (std::size_t i = 0; i < h.coms().size(); ++i) {
    if (i > 0) out += ", ";
    out += to_text(h.coms()[i]);
  }
  return out + "}";
}

std::string msel_text(const Multisel& phi) {
  if (phi.size() == 1) return to_text(phi.sels().front());
  std::string out = "{";
  for (std::size_t i = 0; i < phi.sels().size(); ++i) {
    if (i > 0) out += ", ";
    out += to_text(phi.sels()[i]);
  }
  return out + "}";
}

void print_chor_into(const Chor& c, std::string& out, int indent);

void print_line_start(std::string& out, int indent) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
}

void print_block(const ChorPtr& c, std::string& out, int indent) {
  out += "{\n";
  print_chor_into(*c, out, indent + 1);
  out += '\n';
  print_line_start(out, indent);
  out += '}';
}

void print_chor_into(const Chor& c, std::string& out, int indent) {
  struct Visitor {
    std::string& out;
    int indent;
    void statement(const std::string& text, const ChorPtr& cont) const {
      print_line_start(out, indent);
      out += text;
      if (!std::holds_alternative<CEnd>(cont->node)) {
        out += ";\n";
        print_chor_into(*cont, out, indent);
      }
    }
    void operator()(const CMCom& x) const {
      statement(mcom_text(x.group), x.cont);
    }
    void operator()(const CMSel& x) const {
      statement(msel_text(x.group), x.cont);
    }
    void operator()(const CIf& x) const {
      print_line_start(out, indent);
      out += "if " + x.proc.value + "." + to_text(*x.guard) + " then ";
      print_block(x.then_branch, out, indent);
      out += " else ";
      print_block(x.else_branch, out, indent);
    }
    void operator()(const CDef& x) const {
      print_line_start(out, indent);
      out += "def " + x.name.value + annotation_text(x.procs) + " = ";
      print_block(x.body, out, indent);
      out += " in ";
      print_block(x.scope, out, indent);
    }
    void operator()(const CCall& x) const {
      print_line_start(out, indent);
      out += x.name.value + annotation_text(x.procs);
    }
    void operator()(const CEnd&) const {
      print_line_start(out, indent);
      out += '0';
    }
  };
  std::visit(Visitor{out, indent}, c.node);
}

std::string behaviour_text(const Behaviour& b);

std::string theta_group_text(const ThetaGroup& g) {
  if (g.size() == 1) return to_text(g.thetas().front());
  std::string out = "{";
  for (std::size_t i = 0; i < g.thetas().size(); ++i) {
    if (i > 0) out += ", ";
    out += to_text(g.thetas()[i]);
  }
  return out + "}";
}

std::string sel_group_text(const SelActGroup& g) {
  if (g.size() == 1) return to_text(g.sels().front());
  std::string out = "{";
  for (std::size_t i = 0; i < g.sels().size(); ++i) {
    if (i > 0) out += ", ";
    out += to_text(g.sels()[i]);
  }
  return out + "}";
}

std::string behaviour_text(const Behaviour& b) {
  struct Visitor {
    std::string statement(const std::string& head,
                          const BehaviourPtr& cont) const {
      if (std::holds_alternative<BEnd>(cont->node)) return head;
      return head + "; " + behaviour_text(*cont);
    }
    std::string operator()(const BTheta& x) const {
      return statement(theta_group_text(x.group), x.cont);
    }
    std::string operator()(const BSel& x) const {
      return statement(sel_group_text(x.group), x.cont);
    }
    std::string operator()(const BBranch& x) const {
      std::string out = x.from.value + "&{";
      bool first = true;
      for (const auto& [label, body] : x.branches) {
        if (!first) out += ", ";
        out += label.value + ": " + behaviour_text(*body);
        first = false;
      }
      return out + "}";
    }
    std::string operator()(const BIf& x) const {
      return "if " + to_text(*x.guard) + " then { " +
             behaviour_text(*x.then_branch) + " } else { " +
             behaviour_text(*x.else_branch) + " }";
    }
    std::string operator()(const BDef& x) const {
      return "def " + x.name.value + " = { " + behaviour_text(*x.body) +
             " } in { " + behaviour_text(*x.scope) + " }";
    }
    std::string operator()(const BCall& x) const { return x.name.value; }
    std::string operator()(const BEnd&) const { return "0"; }
  };
  return std::visit(Visitor{}, b.node);
}

}  // namespace

std::string print_chor(const ChorPtr& c) {
  std::string out;
  print_chor_into(*c, out, 0);
  return out;
}

std::string print_behaviour(const BehaviourPtr& b) {
  return behaviour_text(*b);
}

std::string print_network(const Network& n) {
  if (n.procs.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [name, b] : n.procs) {
    if (!first) out += "\n| ";
    out += name.value + " |> " + behaviour_text(*b);
    first = false;
  }
  return out;
}

std::string print_state(const State& s) {
  std::string out;
  bool first = true;
  for (const auto& [key, value] : s.cells()) {
    if (!first) out += '\n';
    out += key.first.value + "." + key.second.value + " = " + to_text(value);
    first = false;
  }
  return out;
}

}  // namespace chorc
