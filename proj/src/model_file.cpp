#include "rbn/model_file.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace rbn {

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t column = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

std::vector<Token> lex(const std::string& line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      std::string word = line.substr(i, j - i);
      if ((word == "post" || word == "pre") && j < line.size() && line[j] == '*') {
        word += '*';
        ++j;
      }
      out.push_back({Tok::Ident, word, col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::Number, line.substr(i, j - i), col});
      i = j;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::Symbol, "->", col});
      i += 2;
    } else if (std::string_view("{}[]:,=|&!?()").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line.size() + 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::size_t lineno) : toks_(std::move(toks)), line_(lineno) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  Token next() {
    Token t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& what) const { throw ParseError(line_, t.column, what); }
  [[noreturn]] void fail(const std::string& what) const { fail(peek(), what); }

  Token ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
    return next();
  }
  void symbol(const char* s) {
    if (peek().kind != Tok::Symbol || peek().text != s) fail(std::string("expected '") + s + "'");
    next();
  }
  bool accept(const char* s) {
    if (peek().kind == Tok::Symbol && peek().text == s) {
      next();
      return true;
    }
    return false;
  }
  Bound number() {
    const Token t = peek();
    if (t.kind == Tok::Ident && t.text == "inf") fail("'inf' is only allowed as an upper bound");
    if (t.kind != Tok::Number) fail("expected a number");
    next();
    Bound v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || v > kMaxFiniteBound) fail(t, "number too large");
    return v;
  }
  Bound bound() {
    if (peek().kind == Tok::Ident && peek().text == "inf") {
      next();
      return kInfinity;
    }
    return number();
  }
  void finish() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }
  std::size_t line() const { return line_; }
  std::size_t pos() const { return pos_; }
  const std::vector<Token>& tokens() const { return toks_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

std::size_t index_of(const std::vector<std::string>& names, const std::string& n) {
  auto it = std::find(names.begin(), names.end(), n);
  return it == names.end() ? names.size() : static_cast<std::size_t>(it - names.begin());
}

class Builder {
 public:
  ModelFile m;

  void statement(LineParser& p) {
    const Token kw = p.ident("a keyword");
    if (!header_seen_) {
      header(p, kw);
      return;
    }
    if (kw.text == "states") {
      names_list(p, states_, "state");
    } else if (kw.text == "alphabet") {
      if (m.kind == ModelKind::IoNet) p.fail(kw, "IO nets have no alphabet");
      names_list(p, letters_, "letter");
    } else if (kw.text == "trans") {
      transition(p);
    } else if (kw.text == "inputs") {
      if (m.kind != ModelKind::Protocol) p.fail(kw, "'inputs' is only allowed in a protocol");
      ensure_model(p, kw);
      while (!p.at_end()) {
        const Token t = p.ident("a state");
        m.inputs.push_back(state(p, t));
      }
    } else if (kw.text == "output") {
      if (m.kind != ModelKind::Protocol) p.fail(kw, "'output' is only allowed in a protocol");
      ensure_model(p, kw);
      if (m.output.empty()) m.output.assign(states_.size(), 2);
      while (!p.at_end()) {
        const Token t = p.ident("a state");
        p.symbol("=");
        const Token v = p.peek();
        const Bound b = p.number();
        if (b > 1) p.fail(v, "output must be 0 or 1");
        m.output[state(p, t).index] = static_cast<std::uint8_t>(b);
      }
    } else if (kw.text == "cube") {
      cube(p);
    } else if (kw.text == "constraint") {
      constraint(p);
    } else if (kw.text == "expr") {
      expression(p);
    } else {
      p.fail(kw, "unknown keyword '" + kw.text + "'");
    }
  }

  void finish() {
    if (!header_seen_) throw ParseError(1, 1, "missing model header");
    build_model(0);
    if (m.kind == ModelKind::Protocol) {
      for (std::size_t q = 0; q < m.output.size(); ++q)
        if (m.output[q] > 1) throw ParseError(last_line_, 1, "no output given for state '" + states_[q] + "'");
      if (m.output.empty() && !states_.empty()) throw ParseError(last_line_, 1, "protocol without 'output'");
      m.protocol().validate();
    }
  }

  std::size_t last_line_ = 1;

 private:
  void header(LineParser& p, const Token& kw) {
    if (kw.text == "rbn")
      m.kind = ModelKind::Rbn;
    else if (kw.text == "protocol")
      m.kind = ModelKind::Protocol;
    else if (kw.text == "asms")
      m.kind = ModelKind::Asms;
    else if (kw.text == "ionet")
      m.kind = ModelKind::IoNet;
    else
      p.fail(kw, "expected a header 'rbn', 'protocol', 'asms' or 'ionet'");
    m.name = p.ident("a model name").text;
    p.finish();
    header_seen_ = true;
  }

  void names_list(LineParser& p, std::vector<std::string>& into, const char* what) {
    if (model_built_) p.fail(std::string(what) + "s must be declared before transitions and sets");
    while (!p.at_end()) {
      const Token t = p.ident(what);
      if (index_of(into, t.text) != into.size()) p.fail(t, std::string("duplicate ") + what + " '" + t.text + "'");
      into.push_back(t.text);
    }
  }

  void ensure_model(LineParser& p, const Token& at) {
    if (!model_built_) build_model(p.line());
    (void)at;
  }

  void build_model(std::size_t) {
    if (model_built_) return;
    model_built_ = true;
    switch (m.kind) {
      case ModelKind::Rbn:
      case ModelKind::Protocol: m.rbn = Rbn(states_, letters_); break;
      case ModelKind::Asms:
        m.asms.states = states_;
        m.asms.alphabet = letters_;
        break;
      case ModelKind::IoNet: m.ionet.states = states_; break;
    }
  }

  StateId state(LineParser& p, const Token& t) {
    const auto i = index_of(states_, t.text);
    if (i == states_.size()) p.fail(t, "unknown state '" + t.text + "'");
    return StateId{static_cast<std::uint32_t>(i)};
  }

  Letter letter(LineParser& p, const Token& t) {
    const auto i = index_of(letters_, t.text);
    if (i == letters_.size()) p.fail(t, "undeclared letter '" + t.text + "'");
    return Letter{static_cast<std::uint32_t>(i)};
  }

  void transition(LineParser& p) {
    ensure_model(p, p.peek());
    const StateId from = state(p, p.ident("a state"));
    switch (m.kind) {
      case ModelKind::Rbn:
      case ModelKind::Protocol: {
        Action kind;
        if (p.accept("!"))
          kind = Action::Broadcast;
        else if (p.accept("?"))
          kind = Action::Receive;
        else
          p.fail("expected '!' or '?'");
        const Letter a = letter(p, p.ident("a letter"));
        const StateId to = state(p, p.ident("a state"));
        p.finish();
        m.rbn.add_transition({from, kind, a, to});
        break;
      }
      case ModelKind::Asms: {
        const Token op = p.ident("R(...) or W(...)");
        if (op.text != "R" && op.text != "W") p.fail(op, "expected R(...) or W(...)");
        p.symbol("(");
        const Letter d = letter(p, p.ident("a register value"));
        p.symbol(")");
        const StateId to = state(p, p.ident("a state"));
        p.finish();
        m.asms.add({from, op.text == "R" ? RegisterOp::Read : RegisterOp::Write, d, to});
        break;
      }
      case ModelKind::IoNet: {
        const Token kw = p.ident("'obs'");
        if (kw.text != "obs") p.fail(kw, "expected 'obs'");
        const StateId observed = state(p, p.ident("a state"));
        p.symbol("->");
        const StateId to = state(p, p.ident("a state"));
        p.finish();
        m.ionet.add({from, observed, to});
        break;
      }
    }
  }

  void new_name(LineParser& p, const Token& t) {
    if (std::find(names_.begin(), names_.end(), t.text) != names_.end()) p.fail(t, "duplicate name '" + t.text + "'");
    names_.push_back(t.text);
  }

  void cube(LineParser& p) {
    ensure_model(p, p.peek());
    const Token name = p.ident("a cube name");
    new_name(p, name);
    const auto n = states_.size();
    Cube c(std::vector<Bound>(n, 0), std::vector<Bound>(n, 0));
    std::vector<bool> seen(n, false);
    p.symbol("{");
    while (!p.accept("}")) {
      const Token s = p.ident("a state or '}'");
      const auto q = state(p, s).index;
      if (seen[q]) p.fail(s, "state '" + s.text + "' bounded twice");
      seen[q] = true;
      p.symbol(":");
      p.symbol("[");
      c.lower[q] = p.number();
      p.symbol(",");
      c.upper[q] = p.bound();
      p.symbol("]");
      p.accept(",");
    }
    p.finish();
    m.cubes.push_back({name.text, std::move(c)});
  }

  void constraint(LineParser& p) {
    ensure_model(p, p.peek());
    const Token name = p.ident("a constraint name");
    new_name(p, name);
    p.symbol("=");
    std::vector<std::string> parts;
    if (p.peek().kind == Tok::Ident && p.peek().text == "empty") {
      p.next();
    } else {
      do {
        const Token t = p.ident("a cube name");
        if (auto it = std::find_if(m.constraints.begin(), m.constraints.end(),
                                   [&](const auto& c) { return c.first == t.text; });
            it != m.constraints.end()) {
          parts.insert(parts.end(), it->second.begin(), it->second.end());
        } else if (m.find_cube(t.text)) {
          parts.push_back(t.text);
        } else {
          p.fail(t, "unknown cube '" + t.text + "'");
        }
      } while (p.accept("|"));
    }
    p.finish();
    m.constraints.push_back({name.text, std::move(parts)});
  }

  // or := and ('|' and)* ; and := unary ('&' unary)* ;
  // unary := '!' unary | post*( or ) | pre*( or ) | ( or ) | name
  NiceExpr parse_or(LineParser& p) {
    NiceExpr e = parse_and(p);
    while (p.accept("|")) e = NiceExpr::disj(e, parse_and(p));
    return e;
  }
  NiceExpr parse_and(LineParser& p) {
    NiceExpr e = parse_unary(p);
    while (p.accept("&")) e = NiceExpr::conj(e, parse_unary(p));
    return e;
  }
  NiceExpr parse_unary(LineParser& p) {
    if (p.accept("!")) return NiceExpr::negate(parse_unary(p));
    if (p.accept("(")) {
      NiceExpr e = parse_or(p);
      p.symbol(")");
      return e;
    }
    const Token t = p.ident("an expression");
    if (t.text == "post*" || t.text == "pre*") {
      p.symbol("(");
      NiceExpr e = parse_or(p);
      p.symbol(")");
      return t.text == "post*" ? NiceExpr::post_star(e) : NiceExpr::pre_star(e);
    }
    for (const auto& ne : m.exprs)
      if (ne.name == t.text) return ne.expr;
    for (const auto& [cn, parts] : m.constraints)
      if (cn == t.text) return NiceExpr::atom(m.resolve_constraint(cn));
    if (auto c = m.find_cube(t.text)) return NiceExpr::atom(CountingConstraint(*c));
    p.fail(t, "unknown identifier '" + t.text + "'");
  }

  void expression(LineParser& p) {
    ensure_model(p, p.peek());
    if (m.kind != ModelKind::Rbn && m.kind != ModelKind::Protocol) p.fail("expressions need an RBN or protocol");
    const Token name = p.ident("an expression name");
    new_name(p, name);
    p.symbol("=");
    const std::size_t start = p.pos();
    NiceExpr e = parse_or(p);
    p.finish();
    std::string src;
    for (std::size_t i = start; i + 1 < p.tokens().size(); ++i) src += (src.empty() ? "" : " ") + p.tokens()[i].text;
    m.exprs.push_back({name.text, src, std::move(e)});
  }

  bool header_seen_ = false;
  bool model_built_ = false;
  std::vector<std::string> states_, letters_, names_;
};

std::string bound_text(Bound b) { return b == kInfinity ? "inf" : std::to_string(b); }

}  // namespace

const std::vector<std::string>& ModelFile::state_names() const {
  switch (kind) {
    case ModelKind::Asms: return asms.states;
    case ModelKind::IoNet: return ionet.states;
    default: return rbn.state_names();
  }
}

Protocol ModelFile::protocol() const {
  if (kind != ModelKind::Protocol) throw ModelError("model is not a protocol");
  return Protocol{rbn, inputs, output};
}

std::optional<Cube> ModelFile::find_cube(std::string_view n) const {
  for (const auto& [name, c] : cubes)
    if (name == n) return c;
  return std::nullopt;
}

CountingConstraint ModelFile::resolve_constraint(std::string_view n, std::size_t budget) const {
  if (auto c = find_cube(n)) return CountingConstraint(*c);
  for (const auto& [name, parts] : constraints)
    if (name == n) {
      CountingConstraint out(dimension());
      for (const auto& part : parts) out.add(*find_cube(part));
      return out;
    }
  for (const auto& e : exprs)
    if (e.name == n) return eval(rbn, e.expr, budget);
  throw ModelError("unknown cube, constraint or expression '" + std::string(n) + "'");
}

NiceExpr ModelFile::resolve_expr(std::string_view n) const {
  for (const auto& e : exprs)
    if (e.name == n) return e.expr;
  return NiceExpr::atom(resolve_constraint(n));
}

StateId ModelFile::state(std::string_view n) const {
  const auto& names = state_names();
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw ModelError("unknown state '" + std::string(n) + "'");
  return StateId{static_cast<std::uint32_t>(it - names.begin())};
}

bool ModelFile::operator==(const ModelFile& o) const {
  if (kind != o.kind || name != o.name || inputs != o.inputs || output != o.output || cubes != o.cubes ||
      constraints != o.constraints || exprs.size() != o.exprs.size())
    return false;
  for (std::size_t i = 0; i < exprs.size(); ++i)
    if (exprs[i].name != o.exprs[i].name || exprs[i].source != o.exprs[i].source) return false;
  auto sorted = [](auto v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  switch (kind) {
    case ModelKind::Rbn:
    case ModelKind::Protocol: return rbn == o.rbn;
    case ModelKind::Asms:
      return asms.states == o.asms.states && asms.alphabet == o.asms.alphabet &&
             sorted(asms.transitions) == sorted(o.asms.transitions);
    case ModelKind::IoNet:
      return ionet.states == o.ionet.states && sorted(ionet.transitions) == sorted(o.ionet.transitions);
  }
  return false;
}

ModelFile parse_model(const std::string& text) {
  Builder b;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto toks = lex(line, lineno);
    if (toks.size() == 1) continue;
    LineParser p(std::move(toks), lineno);
    try {
      b.statement(p);
    } catch (const ParseError&) {
      throw;
    } catch (const ModelError& e) {
      throw ParseError(lineno, 1, e.what());
    }
    b.last_line_ = lineno;
  }
  b.finish();
  return std::move(b.m);
}

std::string serialize(const ModelFile& m) {
  std::ostringstream os;
  static const char* headers[] = {"rbn", "protocol", "asms", "ionet"};
  os << headers[static_cast<int>(m.kind)] << ' ' << m.name << '\n';
  os << "states";
  for (const auto& s : m.state_names()) os << ' ' << s;
  os << '\n';
  const auto& states = m.state_names();
  switch (m.kind) {
    case ModelKind::Rbn:
    case ModelKind::Protocol:
      os << "alphabet";
      for (const auto& a : m.rbn.letter_names()) os << ' ' << a;
      os << '\n';
      for (const auto& t : m.rbn.transitions())
        os << "trans " << states[t.source.index] << ' ' << (t.kind == Action::Broadcast ? '!' : '?')
           << m.rbn.name(t.letter) << ' ' << states[t.target.index] << '\n';
      break;
    case ModelKind::Asms:
      os << "alphabet";
      for (const auto& a : m.asms.alphabet) os << ' ' << a;
      os << '\n';
      for (const auto& t : m.asms.transitions)
        os << "trans " << states[t.source.index] << ' ' << (t.op == RegisterOp::Read ? 'R' : 'W') << '('
           << m.asms.alphabet[t.value.index] << ") " << states[t.target.index] << '\n';
      break;
    case ModelKind::IoNet:
      for (const auto& t : m.ionet.transitions)
        os << "trans " << states[t.source.index] << " obs " << states[t.observed.index] << " -> "
           << states[t.target.index] << '\n';
      break;
  }
  if (m.kind == ModelKind::Protocol) {
    os << "inputs";
    for (auto q : m.inputs) os << ' ' << states[q.index];
    os << "\noutput";
    for (std::size_t q = 0; q < m.output.size(); ++q) os << ' ' << states[q] << '=' << int(m.output[q]);
    os << '\n';
  }
  for (const auto& [name, c] : m.cubes) {
    os << "cube " << name << " {";
    for (std::size_t q = 0; q < c.dimension(); ++q)
      if (c.lower[q] != 0 || c.upper[q] != 0)
        os << ' ' << states[q] << ":[" << c.lower[q] << ',' << bound_text(c.upper[q]) << ']';
    os << " }\n";
  }
  for (const auto& [name, parts] : m.constraints) {
    os << "constraint " << name << " =";
    if (parts.empty()) os << " empty";
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " | " : " ") << parts[i];
    os << '\n';
  }
  for (const auto& e : m.exprs) os << "expr " << e.name << " = " << e.source << '\n';
  return os.str();
}

Configuration parse_configuration(const std::vector<std::string>& states, const std::string& text) {
  Configuration c(states.size());
  if (text.find_first_not_of(" \t") == std::string::npos) return c;
  std::istringstream in(text);
  std::string item;
  std::size_t position = 0;
  bool named = text.find('=') != std::string::npos;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::string value = item;
    std::size_t q = position++;
    if (named) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ModelError("expected state=count in '" + item + "'");
      q = index_of(states, item.substr(0, eq));
      if (q == states.size()) throw ModelError("unknown state '" + item.substr(0, eq) + "'");
      value = item.substr(eq + 1);
    } else if (q >= states.size()) {
      throw ModelError("too many counts in configuration");
    }
    Count v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size()) throw ModelError("bad count '" + value + "'");
    c[q] += v;
  }
  if (!named && position != states.size()) throw ModelError("configuration needs one count per state");
  return c;
}

nlohmann::json to_json(const std::vector<std::string>& states, const Configuration& c) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t q = 0; q < c.dimension(); ++q)
    if (c[q]) j[states[q]] = c[q];
  return j;
}

nlohmann::json to_json(const std::vector<std::string>& states, const Cube& c) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t q = 0; q < c.dimension(); ++q) {
    nlohmann::json hi = c.upper[q] == kInfinity ? nlohmann::json("inf") : nlohmann::json(c.upper[q]);
    j[states[q]] = nlohmann::json::array({c.lower[q], hi});
  }
  return j;
}

nlohmann::json to_json(const std::vector<std::string>& states, const CountingConstraint& c) {
  nlohmann::json cubes = nlohmann::json::array();
  for (const auto& k : c.cubes()) cubes.push_back(to_json(states, k));
  return {{"states", states}, {"cubes", cubes}};
}

CountingConstraint constraint_from_json(const std::vector<std::string>& states, const nlohmann::json& j) {
  CountingConstraint out(states.size());
  for (const auto& k : j.at("cubes")) {
    Cube c(std::vector<Bound>(states.size(), 0), std::vector<Bound>(states.size(), 0));
    for (const auto& [name, iv] : k.items()) {
      const auto q = index_of(states, name);
      if (q == states.size()) throw ModelError("unknown state '" + name + "' in JSON constraint");
      c.lower[q] = iv.at(0).get<Bound>();
      c.upper[q] = iv.at(1).is_string() ? kInfinity : iv.at(1).get<Bound>();
    }
    out.add(std::move(c));
  }
  return out;
}

}  // namespace rbn
