#include "freechoice/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "freechoice/error.hpp"

namespace freechoice {

std::string Diagnostic::to_string() const {
  std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                    (kind == Kind::Syntax ? "syntax error: " : "semantic error: ") + message;
  if (!hint.empty()) {
    out += " (hint: " + hint + ")";
  }
  return out;
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) {
      out += '\n';
    }
    out += d.to_string();
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

enum class Tok { Ident, Int, Float, String, LBrace, RBrace, LParen, RParen, Colon, Semicolon, Comma, Equals, Slash, Arrow, End };

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Float: return "number";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Semicolon: return "';'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::Slash: return "'/'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of file";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

class Diagnostics {
 public:
  void add(Diagnostic::Kind kind, SourcePos pos, std::string message, std::string hint) {
    if (items_.size() < kMaxDiagnostics) {
      items_.push_back({kind, pos, std::move(message), std::move(hint)});
    }
  }
  void syntax(SourcePos pos, std::string message, std::string hint) {
    add(Diagnostic::Kind::Syntax, pos, std::move(message), std::move(hint));
  }
  void semantic(SourcePos pos, std::string message, std::string hint) {
    add(Diagnostic::Kind::Semantic, pos, std::move(message), std::move(hint));
  }
  bool full() const { return items_.size() >= kMaxDiagnostics; }
  bool empty() const { return items_.empty(); }
  std::vector<Diagnostic>& items() { return items_; }

 private:
  std::vector<Diagnostic> items_;
};

std::vector<Token> lex(std::string_view src, Diagnostics& diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count = 1) {
    for (std::size_t k = 0; k < count && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') {
        advance();
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    const SourcePos pos{line, col};
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", pos});
      advance(2);
      continue;
    }
    const bool signed_number = (c == '-' || c == '+') && i + 1 < src.size() &&
                               (is_digit(src[i + 1]) || src[i + 1] == '.');
    if (is_digit(c) || signed_number || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      std::size_t j = i;
      if (src[j] == '-' || src[j] == '+') {
        ++j;
      }
      bool is_float = false;
      while (j < src.size() && is_digit(src[j])) {
        ++j;
      }
      if (j < src.size() && src[j] == '.') {
        is_float = true;
        ++j;
        while (j < src.size() && is_digit(src[j])) {
          ++j;
        }
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) {
          ++k;
        }
        if (k < src.size() && is_digit(src[k])) {
          is_float = true;
          j = k;
          while (j < src.size() && is_digit(src[j])) {
            ++j;
          }
        }
      }
      out.push_back({is_float ? Tok::Float : Tok::Int, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string text;
      advance();
      bool closed = false;
      while (i < src.size() && src[i] != '\n') {
        if (src[i] == '"') {
          closed = true;
          advance();
          break;
        }
        if (src[i] == '\\' && i + 1 < src.size() && (src[i + 1] == '"' || src[i + 1] == '\\')) {
          advance();
        }
        text += src[i];
        advance();
      }
      if (!closed) {
        diags.syntax(pos, "unterminated string", "close the string with '\"' on the same line");
      }
      out.push_back({Tok::String, std::move(text), pos});
      continue;
    }
    Tok kind = Tok::End;
    switch (c) {
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ':': kind = Tok::Colon; break;
      case ';': kind = Tok::Semicolon; break;
      case ',': kind = Tok::Comma; break;
      case '=': kind = Tok::Equals; break;
      case '/': kind = Tok::Slash; break;
      default: break;
    }
    if (kind == Tok::End) {
      diags.syntax(pos, std::string("unexpected character '") + c + "'", "remove it or start a comment with '#'");
    } else {
      out.push_back({kind, std::string(1, c), pos});
    }
    advance();
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

// Raw syntax tree; names are resolved in the semantic pass.
struct Named {
  std::string name;
  SourcePos pos;
};

struct VarDecl {
  Named name;
  Token cardinality;
};

struct EdgeDecl {
  Named from, to;
};

struct PointDecl {
  Named label;
  std::vector<Token> coords;
};

struct AssignDecl {
  Named name;
  Token value;
};

struct EntryDecl {
  SourcePos pos;
  std::vector<AssignDecl> assigns;
  Token numerator;
  std::optional<Token> denominator;  // absent for FLOAT
};

struct Block {
  std::string keyword;
  SourcePos pos;
};

struct RawScenario {
  Token name;
  SourcePos pos;
  std::vector<VarDecl> vars;
  std::vector<Block> blocks;
  std::vector<EdgeDecl> edges;
  std::vector<PointDecl> points;
  std::vector<EntryDecl> entries;
};

struct SyntaxFailure {};

class Parser {
 public:
  Parser(std::vector<Token> tokens, Diagnostics& diags) : toks_(std::move(tokens)), diags_(diags) {}

  RawScenario parse() {
    RawScenario raw;
    try {
      const Token& kw = peek();
      raw.pos = kw.pos;
      if (kw.kind != Tok::Ident || kw.text != "scenario") {
        fail("expected 'scenario'", "files start with: scenario \"name\"");
      }
      ++pos_;
      raw.name = expect(Tok::String, "a quoted scenario name follows 'scenario'");
    } catch (const SyntaxFailure&) {
      return raw;
    }
    while (peek().kind != Tok::End && !diags_.full()) {
      const std::size_t start = pos_;
      try {
        statement(raw);
      } catch (const SyntaxFailure&) {
        recover(start);
      }
    }
    return raw;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& message, const std::string& hint) {
    const Token& t = peek();
    diags_.syntax(t.pos, message + ", found " + (t.kind == Tok::End ? "end of file" : "'" + t.text + "'"), hint);
    throw SyntaxFailure{};
  }

  Token expect(Tok kind, const std::string& hint) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + describe(kind), hint);
    }
    return toks_[pos_++];
  }

  Named ident(const std::string& hint) {
    Token t = expect(Tok::Ident, hint);
    return {t.text, t.pos};
  }

  // Skips to the end of the block the failed statement opened, or to the
  // next statement keyword if no brace was opened yet.
  void recover(std::size_t start) {
    int depth = 0;
    for (std::size_t k = start; k < pos_; ++k) {
      depth += toks_[k].kind == Tok::LBrace;
      depth -= toks_[k].kind == Tok::RBrace;
    }
    if (pos_ == start) {
      ++pos_;
    }
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (depth <= 0 && t.kind == Tok::Ident &&
          (t.text == "var" || t.text == "order" || t.text == "spacetime" || t.text == "dist")) {
        return;
      }
      ++pos_;
      if (t.kind == Tok::LBrace) {
        ++depth;
      } else if (t.kind == Tok::RBrace && --depth <= 0) {
        return;
      }
    }
  }

  void statement(RawScenario& raw) {
    const Token& kw = peek();
    if (kw.kind != Tok::Ident) {
      fail("expected a statement", "statements start with var, order, spacetime or dist");
    }
    if (kw.text == "var") {
      ++pos_;
      VarDecl v;
      v.name = ident("var NAME { alphabet: K }");
      expect(Tok::LBrace, "var NAME { alphabet: K }");
      const Token& field = peek();
      if (field.kind != Tok::Ident || field.text != "alphabet") {
        fail("expected 'alphabet:'", "var NAME { alphabet: K }");
      }
      ++pos_;
      expect(Tok::Colon, "var NAME { alphabet: K }");
      v.cardinality = expect(Tok::Int, "the alphabet size is a positive integer");
      expect(Tok::RBrace, "var NAME { alphabet: K }");
      raw.vars.push_back(std::move(v));
    } else if (kw.text == "order") {
      raw.blocks.push_back({kw.text, kw.pos});
      ++pos_;
      expect(Tok::LBrace, "order { A -> X; B -> Y }");
      if (peek().kind != Tok::RBrace) {
        for (;;) {
          EdgeDecl e;
          e.from = ident("edges look like A -> X");
          expect(Tok::Arrow, "edges look like A -> X");
          e.to = ident("edges look like A -> X");
          raw.edges.push_back(std::move(e));
          if (peek().kind != Tok::Semicolon) {
            break;
          }
          ++pos_;
          if (peek().kind == Tok::RBrace) {
            break;
          }
        }
      }
      expect(Tok::RBrace, "separate edges with ';' and close the block with '}'");
    } else if (kw.text == "spacetime") {
      raw.blocks.push_back({kw.text, kw.pos});
      ++pos_;
      expect(Tok::LBrace, "spacetime { A: (t, x); B: (t, x) }");
      for (;;) {
        PointDecl p;
        p.label = ident("points look like A: (t, x)");
        expect(Tok::Colon, "points look like A: (t, x)");
        expect(Tok::LParen, "points look like A: (t, x)");
        for (;;) {
          if (peek().kind != Tok::Int && peek().kind != Tok::Float) {
            fail("expected a number", "coordinates are numbers like 0, -1 or 2.5");
          }
          p.coords.push_back(toks_[pos_++]);
          if (peek().kind != Tok::Comma) {
            break;
          }
          ++pos_;
        }
        expect(Tok::RParen, "close the coordinate list with ')'");
        raw.points.push_back(std::move(p));
        if (peek().kind != Tok::Semicolon) {
          break;
        }
        ++pos_;
        if (peek().kind == Tok::RBrace) {
          break;
        }
      }
      expect(Tok::RBrace, "separate points with ';' and close the block with '}'");
    } else if (kw.text == "dist") {
      raw.blocks.push_back({kw.text, kw.pos});
      ++pos_;
      expect(Tok::LBrace, "dist { (A=0, B=0): 1/2 ... }");
      do {
        EntryDecl e;
        e.pos = expect(Tok::LParen, "entries look like (A=0, B=1): 1/4").pos;
        for (;;) {
          AssignDecl a;
          a.name = ident("assignments look like A=0");
          expect(Tok::Equals, "assignments look like A=0");
          a.value = expect(Tok::Int, "outcomes are integers from 0");
          e.assigns.push_back(std::move(a));
          if (peek().kind != Tok::Comma) {
            break;
          }
          ++pos_;
        }
        expect(Tok::RParen, "close the assignment list with ')'");
        expect(Tok::Colon, "a ':' separates the outcome from its probability");
        if (peek().kind == Tok::Float) {
          e.numerator = toks_[pos_++];
        } else {
          e.numerator = expect(Tok::Int, "probabilities are p/q or decimal numbers");
          expect(Tok::Slash, "exact probabilities are written p/q");
          e.denominator = expect(Tok::Int, "exact probabilities are written p/q");
        }
        raw.entries.push_back(std::move(e));
      } while (peek().kind == Tok::LParen);
      expect(Tok::RBrace, "close the dist block with '}'");
    } else {
      fail("expected a statement", "statements start with var, order, spacetime or dist");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Diagnostics& diags_;
};

template <class T>
bool parse_number(const std::string& text, T& value) {
  const char* b = text.data();
  if (!text.empty() && text.front() == '+') {
    ++b;
  }
  auto res = std::from_chars(b, text.data() + text.size(), value);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

struct Built {
  Scenario scenario;
  std::map<std::string, SourcePos> spans;
};

std::optional<Built> analyze(const RawScenario& raw, Diagnostics& diags) {
  std::vector<VariableSpec> vars;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::string, SourcePos> spans;
  spans["scenario"] = raw.name.pos;
  for (const auto& v : raw.vars) {
    int k = 0;
    if (v.cardinality.text.front() == '-' || !parse_number(v.cardinality.text, k) || k < 1) {
      diags.semantic(v.cardinality.pos, "alphabet size of " + v.name.name + " must be an integer >= 1",
                     "var " + v.name.name + " { alphabet: 2 }");
      continue;
    }
    if (index.count(v.name.name)) {
      diags.semantic(v.name.pos, "variable " + v.name.name + " declared twice", "rename or remove one declaration");
      continue;
    }
    index[v.name.name] = vars.size();
    vars.push_back({v.name.name, k});
    spans[v.name.name] = v.name.pos;
  }
  auto known = [&](const Named& n) {
    if (index.count(n.name)) {
      return true;
    }
    diags.semantic(n.pos, "unknown variable " + n.name, "declare it first: var " + n.name + " { alphabet: 2 }");
    return false;
  };

  int orders = 0, spacetimes = 0, dists = 0;
  for (const auto& b : raw.blocks) {
    int& count = b.keyword == "order" ? orders : b.keyword == "spacetime" ? spacetimes : dists;
    ++count;
    if (count > 1) {
      diags.semantic(b.pos, "second " + b.keyword + " block", "a scenario has one " + b.keyword + " block");
    } else if ((b.keyword == "order" && spacetimes) || (b.keyword == "spacetime" && orders)) {
      diags.semantic(b.pos, "conflicting order and spacetime blocks", "give either an order or a spacetime block");
    }
  }
  if (orders == 0 && spacetimes == 0) {
    diags.semantic(raw.pos, "scenario has neither an order nor a spacetime block",
                   "add order { ... } or spacetime { ... }");
  }

  std::vector<std::string> names;
  for (const auto& v : vars) {
    names.push_back(v.name);
  }

  std::optional<CausalOrder> order;
  std::optional<std::vector<SpacetimeEvent>> embedding;
  if (orders > 0) {
    std::vector<Edge> edges;
    bool ok = true;
    for (const auto& e : raw.edges) {
      ok = known(e.from) && ok;
      ok = known(e.to) && ok;
      edges.emplace_back(e.from.name, e.to.name);
    }
    if (ok) {
      order = CausalOrder::from_edges(names, edges);
    }
  } else if (spacetimes > 0) {
    std::vector<SpacetimeEvent> events;
    std::set<std::string> placed;
    bool ok = true;
    for (const auto& p : raw.points) {
      if (!known(p.label)) {
        ok = false;
        continue;
      }
      if (!placed.insert(p.label.name).second) {
        diags.semantic(p.label.pos, "event " + p.label.name + " placed twice", "give each variable one point");
        ok = false;
        continue;
      }
      if (p.coords.size() < 2 || p.coords.size() > 4) {
        diags.semantic(p.label.pos, "event " + p.label.name + " needs t and 1 to 3 spatial coordinates",
                       "write " + p.label.name + ": (t, x) or (t, x, y) or (t, x, y, z)");
        ok = false;
        continue;
      }
      std::vector<double> c;
      for (const auto& tok : p.coords) {
        double v = 0.0;
        if (!parse_number(tok.text, v) || !std::isfinite(v)) {
          diags.semantic(tok.pos, "coordinate is not a finite number", "use a decimal number");
          ok = false;
        }
        c.push_back(v);
      }
      if (!events.empty() && events.front().x.size() + 1 != c.size()) {
        diags.semantic(p.label.pos, "event " + p.label.name + " has a different spatial dimension",
                       "all events share one dimension");
        ok = false;
        continue;
      }
      events.push_back({p.label.name, c.front(), std::vector<double>(c.begin() + 1, c.end())});
    }
    for (const auto& n : names) {
      if (ok && !placed.count(n)) {
        diags.semantic(spans[n], "variable " + n + " has no spacetime point", "add " + n + ": (t, x) to the spacetime block");
        ok = false;
      }
    }
    if (ok) {
      // Reorder to declaration order so labels match the variables.
      std::vector<SpacetimeEvent> ordered;
      for (const auto& n : names) {
        ordered.push_back(*std::find_if(events.begin(), events.end(), [&](const auto& e) { return e.label == n; }));
      }
      embedding = std::move(ordered);
      order = derive_order(*embedding);
    }
  }

  std::optional<JointDistribution> dist;
  if (dists > 0) {
    const bool approx = std::any_of(raw.entries.begin(), raw.entries.end(),
                                    [](const auto& e) { return !e.denominator.has_value(); });
    std::vector<Entry> entries;
    std::set<Outcome> seen;
    bool ok = true;
    for (const auto& e : raw.entries) {
      Outcome o(vars.size(), -1);
      bool entry_ok = true;
      for (const auto& a : e.assigns) {
        if (!known(a.name)) {
          entry_ok = false;
          continue;
        }
        const auto k = index[a.name.name];
        int value = 0;
        if (!parse_number(a.value.text, value) || value < 0 || value >= vars[k].cardinality) {
          diags.semantic(a.value.pos, a.name.name + "=" + a.value.text + " is outside the alphabet",
                         "values of " + a.name.name + " run from 0 to " + std::to_string(vars[k].cardinality - 1));
          entry_ok = false;
          continue;
        }
        if (o[k] != -1) {
          diags.semantic(a.name.pos, a.name.name + " assigned twice in one entry", "assign each variable once");
          entry_ok = false;
          continue;
        }
        o[k] = value;
      }
      if (entry_ok && std::find(o.begin(), o.end(), -1) != o.end()) {
        diags.semantic(e.pos, "entry does not assign every variable", "every entry lists all declared variables");
        entry_ok = false;
      }
      if (entry_ok && !seen.insert(o).second) {
        diags.semantic(e.pos, "outcome listed twice", "merge the duplicate entries");
        entry_ok = false;
      }
      std::optional<Probability> p;
      if (e.denominator) {
        mpz_class num, den;
        const bool parsed = e.numerator.text.front() != '-' && e.denominator->text.front() != '-' &&
                            num.set_str(e.numerator.text.front() == '+' ? e.numerator.text.substr(1) : e.numerator.text, 10) == 0 &&
                            den.set_str(e.denominator->text.front() == '+' ? e.denominator->text.substr(1) : e.denominator->text, 10) == 0;
        if (!parsed || den == 0 || num > den) {
          diags.semantic(e.numerator.pos, "bad probability " + e.numerator.text + "/" + e.denominator->text,
                         "probabilities are p/q with 0 <= p <= q and q > 0");
          entry_ok = false;
        } else {
          mpq_class q(num, den);
          q.canonicalize();
          p = approx ? Probability::approx(q.get_d()) : Probability::exact(q);
        }
      } else {
        double v = 0.0;
        if (!parse_number(e.numerator.text, v) || !(v >= 0.0 && v <= 1.0)) {
          diags.semantic(e.numerator.pos, "bad probability " + e.numerator.text, "probabilities lie in [0, 1]");
          entry_ok = false;
        } else {
          p = Probability::approx(v);
        }
      }
      if (entry_ok && p) {
        entries.push_back({std::move(o), std::move(*p)});
      }
      ok = ok && entry_ok;
    }
    if (ok && diags.empty()) {
      try {
        dist = make_joint(vars, entries, approx ? Mode::Approx : Mode::Exact);
      } catch (const Error& err) {
        const auto& b = *std::find_if(raw.blocks.begin(), raw.blocks.end(), [](const auto& b) { return b.keyword == "dist"; });
        diags.semantic(b.pos, std::string(err.what()),
                       err.code() == ErrorCode::NotNormalized ? "probabilities must sum to 1" : "check the dist entries");
      }
    }
  }

  if (!diags.empty() || !order) {
    return std::nullopt;
  }
  try {
    return Built{make_scenario(raw.name.text, vars, std::move(dist), std::move(*order), std::move(embedding)),
                 std::move(spans)};
  } catch (const Error& err) {
    diags.semantic(raw.pos, err.what(), "check the variables against the order and dist blocks");
    return std::nullopt;
  }
}

Built parse_built(std::string_view text) {
  Diagnostics diags;
  auto tokens = lex(text, diags);
  Parser parser(std::move(tokens), diags);
  const RawScenario raw = parser.parse();
  if (!diags.empty()) {
    throw ParseError(std::move(diags.items()));
  }
  auto built = analyze(raw, diags);
  if (!built) {
    throw ParseError(std::move(diags.items()));
  }
  return std::move(*built);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out + "\"";
}

std::string number(double v, bool force_float) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (force_float && s.find_first_of(".e") == std::string::npos) {
    s += ".0";
  }
  return s;
}

}  // namespace

Scenario parse_scenario(std::string_view text) { return parse_built(text).scenario; }

ScenarioFile parse_scenario_file(std::string path, std::string_view text) {
  auto built = parse_built(text);
  return {std::move(path), std::move(built.scenario), std::move(built.spans)};
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_file(path, ss.str());
}

std::string export_scenario(const Scenario& scenario) {
  std::ostringstream out;
  out << "scenario " << quoted(scenario.name) << "\n\n";
  for (const auto& v : scenario.variables) {
    out << "var " << v.name << " { alphabet: " << v.cardinality << " }\n";
  }
  out << '\n';
  if (scenario.embedding) {
    out << "spacetime {\n";
    for (std::size_t i = 0; i < scenario.embedding->size(); ++i) {
      const auto& e = (*scenario.embedding)[i];
      out << "  " << e.label << ": (" << number(e.t, false);
      for (double c : e.x) {
        out << ", " << number(c, false);
      }
      out << ")" << (i + 1 < scenario.embedding->size() ? ";" : "") << '\n';
    }
    out << "}\n";
  } else {
    const auto pairs = scenario.order.pairs();
    out << "order {";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out << (i ? "; " : " ") << pairs[i].first << " -> " << pairs[i].second;
    }
    out << " }\n";
  }
  if (scenario.distribution) {
    const auto& d = *scenario.distribution;
    out << "\ndist {\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
      const bool zero = d.mode() == Mode::Exact ? d.exact_table()[i] == 0 : d.approx_table()[i] == 0.0;
      if (zero) {
        continue;
      }
      const auto o = d.outcome_at(i);
      out << "  (";
      for (std::size_t k = 0; k < o.size(); ++k) {
        out << (k ? ", " : "") << d.variables()[k].name << "=" << o[k];
      }
      out << "): "
          << (d.mode() == Mode::Exact ? rational_string(d.exact_table()[i]) : number(d.approx_table()[i], true))
          << '\n';
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace freechoice
