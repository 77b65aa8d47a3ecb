#include "gkcheck/catalog.hpp"

#include "gkcheck/group_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace gkcheck {

namespace {

using Kind = ParseError::Kind;

struct Token {
  enum class Type { number, ident, op, end } type;
  std::string text;
  int column;  // 1-based, in the whole line
};

std::vector<Token> tokenize(const std::string& s, int line, int col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const int col = col0 + static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '.' || s[j] == 'e' || s[j] == 'E') && j + 1 < s.size() &&
          std::isdigit(static_cast<unsigned char>(s[j + 1])))
        throw ParseError(Kind::syntax, line, col, "floating literals are not allowed");
      out.push_back({Token::Type::number, s.substr(i, j - i), col});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Type::ident, s.substr(i, j - i), col});
      i = j;
    } else if (std::string_view("+-*/^(),;").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::op, std::string(1, c), col});
      ++i;
    } else if (c == '.') {
      throw ParseError(Kind::syntax, line, col, "floating literals are not allowed");
    } else {
      throw ParseError(Kind::syntax, line, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Type::end, "", col0 + static_cast<int>(s.size())});
  return out;
}

/// Index of a basis symbol such as `e12` (1-based), or 0 if the name is not one.
int basis_index(const std::string& name, const std::string& symbol) {
  if (name.size() <= symbol.size() || name.compare(0, symbol.size(), symbol) != 0) return 0;
  const std::string digits = name.substr(symbol.size());
  if (!std::all_of(digits.begin(), digits.end(), ::isdigit) || digits[0] == '0' || digits.size() > 4) return 0;
  return std::stoi(digits);
}

struct Context {
  int dim = 0;
  std::string symbol = "e";
  std::vector<std::string> params;
};

struct Value {
  CForm f;
  std::optional<IndexTuple> mono;  // a wedge of bare basis symbols, in written order
  std::optional<long> integer;     // a bare integer literal
};

CScalar power(const CScalar& x, long e) {
  CScalar out(1L);
  for (long k = 0; k < e; ++k) out *= x;
  return out;
}

/// Recursive descent over one expression list. Scalars are 0-forms; `^`
/// is a power when the left side is a 0-form and the right side an integer
/// literal, and the wedge product otherwise.
class ExprParser {
 public:
  ExprParser(const std::string& text, int line, int col0, const Context& ctx)
      : toks_(tokenize(text, line, col0)), line_(line), ctx_(ctx) {}

  std::vector<Value> list(char sep = ',') {
    std::vector<Value> out{expr()};
    while (peek_op(std::string(1, sep))) {
      ++pos_;
      out.push_back(expr());
    }
    if (toks_[pos_].type != Token::Type::end) fail(Kind::syntax, "unexpected '" + toks_[pos_].text + "'");
    return out;
  }

  Value single() {
    auto v = list();
    if (v.size() != 1) fail(Kind::syntax, "expected a single expression");
    return v[0];
  }

 private:
  [[noreturn]] void fail(Kind k, const std::string& msg) const { throw ParseError(k, line_, toks_[pos_].column, msg); }
  [[noreturn]] void fail_at(Kind k, int col, const std::string& msg) const { throw ParseError(k, line_, col, msg); }

  bool peek_op(const std::string& op) const {
    return toks_[pos_].type == Token::Type::op && toks_[pos_].text == op;
  }

  Value expr() {
    Value v = term();
    while (peek_op("+") || peek_op("-")) {
      const bool plus = toks_[pos_].text == "+";
      const int col = toks_[pos_].column;
      ++pos_;
      Value r = term();
      if (v.f.degree() != r.f.degree()) fail_at(Kind::invalid, col, "adding forms of different degree");
      v = Value{plus ? v.f + r.f : v.f - r.f, std::nullopt, std::nullopt};
    }
    return v;
  }

  Value term() {
    Value v = unary();
    while (peek_op("*") || peek_op("/")) {
      const bool times = toks_[pos_].text == "*";
      const int col = toks_[pos_].column;
      ++pos_;
      Value r = unary();
      if (times) {
        if (v.f.degree() > 0 && r.f.degree() > 0) fail_at(Kind::invalid, col, "use ^ to wedge forms");
        v = Value{wedge(v.f, r.f), std::nullopt, std::nullopt};
      } else {
        if (r.f.degree() != 0) fail_at(Kind::invalid, col, "division by a form");
        const CScalar den = r.f.coefficient({});
        if (den.is_zero()) fail_at(Kind::invalid, col, "division by zero");
        v = Value{CScalar(1L) / den * v.f, std::nullopt, std::nullopt};
      }
    }
    return v;
  }

  Value unary() {
    if (peek_op("-")) {
      ++pos_;
      Value v = unary();
      return Value{-v.f, std::nullopt, std::nullopt};
    }
    return pow();
  }

  Value pow() {
    Value v = primary();
    if (!peek_op("^")) return v;
    const int col = toks_[pos_].column;
    ++pos_;
    Value r = pow();
    if (v.f.degree() == 0 && r.integer) {
      if (*r.integer > 64) fail_at(Kind::invalid, col, "exponent too large");
      return Value{CForm::constant(ctx_.dim, power(v.f.coefficient({}), *r.integer)), std::nullopt, std::nullopt};
    }
    if (v.f.degree() == 0 || r.f.degree() == 0) fail_at(Kind::invalid, col, "use * to scale a form");
    std::optional<IndexTuple> mono;
    if (v.mono && r.mono) {
      if (v.mono->back() >= r.mono->front())
        fail_at(Kind::invalid, col,
                "indices must increase: " + ctx_.symbol + std::to_string(v.mono->back() + 1) + "^" + ctx_.symbol +
                    std::to_string(r.mono->front() + 1));
      mono = *v.mono;
      mono->insert(mono->end(), r.mono->begin(), r.mono->end());
    }
    return Value{wedge(v.f, r.f), mono, std::nullopt};
  }

  Value primary() {
    const Token t = toks_[pos_];
    if (t.type == Token::Type::number) {
      ++pos_;
      long n = 0;
      try {
        n = std::stol(t.text);
      } catch (const std::out_of_range&) {
        fail_at(Kind::invalid, t.column, "integer literal too large");
      }
      return Value{CForm::constant(ctx_.dim, CScalar(n)), std::nullopt, n};
    }
    if (t.type == Token::Type::ident) {
      ++pos_;
      if (t.text == "i") return Value{CForm::constant(ctx_.dim, CScalar::i()), std::nullopt, std::nullopt};
      if (std::find(ctx_.params.begin(), ctx_.params.end(), t.text) != ctx_.params.end())
        return Value{CForm::constant(ctx_.dim, CScalar(Scalar::parameter(t.text))), std::nullopt, std::nullopt};
      if (const int k = basis_index(t.text, ctx_.symbol)) {
        if (k > ctx_.dim)
          fail_at(Kind::index, t.column, t.text + " is out of range in dimension " + std::to_string(ctx_.dim));
        return Value{CForm::covector(ctx_.dim, k - 1), IndexTuple{k - 1}, std::nullopt};
      }
      fail_at(Kind::unknown_parameter, t.column, "unknown parameter '" + t.text + "'");
    }
    if (peek_op("(")) {
      ++pos_;
      Value v = expr();
      if (!peek_op(")")) fail(Kind::syntax, "expected ')'");
      ++pos_;
      return Value{v.f, std::nullopt, std::nullopt};
    }
    if (t.type == Token::Type::end) fail(Kind::syntax, "unexpected end of expression");
    fail(Kind::syntax, "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
  const Context& ctx_;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Splits `text` at top-level occurrences of `sep`, reporting each piece's column.
std::vector<std::pair<std::string, int>> split_top(const std::string& text, int col0, char sep) {
  std::vector<std::pair<std::string, int>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == sep && depth == 0)) {
      out.push_back({text.substr(start, i - start), col0 + static_cast<int>(start)});
      start = i + 1;
    }
  }
  return out;
}

Scalar real_scalar(const Value& v, int line, int col) {
  if (v.f.degree() != 0) throw ParseError(Kind::invalid, line, col, "expected a scalar");
  const CScalar c = v.f.coefficient({});
  if (!c.is_real()) throw ParseError(Kind::invalid, line, col, "expected a real scalar");
  return c.re();
}

long parse_int(const std::string& s, int line, int col) {
  const std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin() + (t[0] == '-' ? 1 : 0), t.end(), ::isdigit) || t == "-")
    throw ParseError(Kind::syntax, line, col, "expected an integer");
  return std::stol(t);
}

std::string coefficient_text(const CScalar& c) {
  const std::string s = c.str();
  if (c.is_compound() || s[0] == '-') return "(" + s + ")";
  return s;
}

template <class T>
std::string form_text(const BasicForm<T>& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [idx, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (int i : idx) mono += (mono.empty() ? "" : "^") + names[i];
    const CScalar z(c);
    if (z == CScalar(1L)) out += mono;
    else out += coefficient_text(z) + " * " + mono;
  }
  return out;
}

}  // namespace

CatalogEntry parse_definition(const std::string& text) {
  CatalogEntry e;
  Context ctx;
  std::optional<int> dim;
  bool have_params = false, have_basis = false, body_started = false;
  std::vector<std::optional<Form>> d;
  std::optional<Matrix<Scalar>> gram;
  int gram_line = 0;
  std::optional<IntegerMatrix> lattice_matrix;
  std::optional<int> lattice_p;
  int model_line = 0, last_line = 0;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    last_line = line;
    const std::string content = raw.substr(0, raw.find('#'));
    if (trim(content).empty()) continue;
    const auto eq = content.find('=');
    const int lead = static_cast<int>(content.find_first_not_of(" \t")) + 1;
    if (eq == std::string::npos) throw ParseError(Kind::syntax, line, lead, "expected '<directive> = <value>'");
    const std::string key = trim(content.substr(0, eq));
    const std::string rhs = content.substr(eq + 1);
    const int rhs_col = static_cast<int>(eq) + 2;
    const int value_col = rhs_col + static_cast<int>(rhs.find_first_not_of(" \t") == std::string::npos
                                                          ? 0
                                                          : rhs.find_first_not_of(" \t"));

    auto need_dim = [&](const std::string& what) {
      if (!dim) throw ParseError(Kind::invalid, line, lead, "dim must be declared before " + what);
      body_started = true;
    };

    if (key == "name") {
      const std::string v = trim(rhs);
      if (!is_identifier(v)) throw ParseError(Kind::syntax, line, value_col, "expected a name");
      e.name = v;
    } else if (key == "dim") {
      if (dim) throw ParseError(Kind::invalid, line, lead, "dim declared twice");
      const long n = parse_int(rhs, line, value_col);
      if (n < 1 || n > 32) throw ParseError(Kind::invalid, line, value_col, "dim must be between 1 and 32");
      dim = static_cast<int>(n);
      ctx.dim = *dim;
      d.assign(*dim, std::nullopt);
    } else if (key == "params") {
      if (have_params || body_started) throw ParseError(Kind::invalid, line, lead, "params must come once, before the equations");
      have_params = true;
      for (const auto& [piece, col] : split_top(rhs, rhs_col, ',')) {
        const std::string p = trim(piece);
        const int pcol = col + static_cast<int>(piece.find_first_not_of(" \t") == std::string::npos ? 0 : piece.find_first_not_of(" \t"));
        if (p.empty() && split_top(rhs, rhs_col, ',').size() == 1) break;
        if (!is_identifier(p)) throw ParseError(Kind::syntax, line, pcol, "expected a parameter name");
        if (p == "i" || p == "pi" || basis_index(p, ctx.symbol))
          throw ParseError(Kind::invalid, line, pcol, "'" + p + "' cannot be a parameter name");
        if (std::find(ctx.params.begin(), ctx.params.end(), p) != ctx.params.end())
          throw ParseError(Kind::invalid, line, pcol, "parameter '" + p + "' declared twice");
        ctx.params.push_back(p);
      }
    } else if (key == "basis") {
      if (have_basis || body_started) throw ParseError(Kind::invalid, line, lead, "basis must come once, before the equations");
      const std::string v = trim(rhs);
      if (v.empty() || !std::all_of(v.begin(), v.end(), ::isalpha) || v == "i" || v == "d")
        throw ParseError(Kind::syntax, line, value_col, "basis symbol must be letters");
      have_basis = true;
      ctx.symbol = v;
    } else if (key.size() > 1 && key[0] == 'd' && std::isspace(static_cast<unsigned char>(key[1]))) {
      need_dim("the equations");
      const std::string target = trim(key.substr(1));
      const int tcol = lead + static_cast<int>(key.find(target));
      const int k = basis_index(target, ctx.symbol);
      if (!k) throw ParseError(Kind::syntax, line, tcol, "expected d " + ctx.symbol + "<i>");
      if (k > *dim) throw ParseError(Kind::index, line, tcol, target + " is out of range in dimension " + std::to_string(*dim));
      if (d[k - 1]) throw ParseError(Kind::invalid, line, lead, "d " + target + " given twice");
      const Value v = ExprParser(rhs, line, rhs_col, ctx).single();
      Form f(*dim, 2);
      if (v.f.degree() == 0 && v.f.is_zero()) {
        // `d e2 = 0`
      } else if (v.f.degree() != 2) {
        throw ParseError(Kind::invalid, line, value_col, "d " + target + " must be a 2-form");
      } else {
        auto real = real_part_if_real(v.f);
        if (!real) throw ParseError(Kind::invalid, line, value_col, "structure equations must be real");
        f = *real;
      }
      d[k - 1] = f;
    } else if (key == "J+" || key == "J-") {
      need_dim(key);
      const auto vals = ExprParser(rhs, line, rhs_col, ctx).list();
      if (static_cast<int>(vals.size()) * 2 != *dim)
        throw ParseError(Kind::invalid, line, value_col, key + " needs " + std::to_string(*dim / 2) + " forms of type (1,0)");
      std::vector<CForm> forms;
      for (const auto& v : vals) {
        if (v.f.degree() != 1) throw ParseError(Kind::invalid, line, value_col, key + " entries must be 1-forms");
        forms.push_back(v.f);
      }
      (key == "J+" ? e.j_plus : e.j_minus) = forms;
    } else if (key == "g") {
      need_dim("g");
      gram_line = line;
      if (trim(rhs) == "identity") {
        gram = Matrix<Scalar>::identity(*dim);
      } else {
        const auto rows = split_top(rhs, rhs_col, ';');
        if (static_cast<int>(rows.size()) != *dim)
          throw ParseError(Kind::invalid, line, value_col, "g needs " + std::to_string(*dim) + " rows");
        Matrix<Scalar> m(*dim, *dim);
        for (int r = 0; r < *dim; ++r) {
          const auto vals = ExprParser(rows[r].first, line, rows[r].second, ctx).list();
          if (static_cast<int>(vals.size()) != *dim)
            throw ParseError(Kind::invalid, line, rows[r].second, "row " + std::to_string(r + 1) + " needs " + std::to_string(*dim) + " entries");
          for (int c = 0; c < *dim; ++c) m(r, c) = real_scalar(vals[c], line, rows[r].second);
        }
        gram = m;
      }
    } else if (key == "lattice_matrix") {
      try {
        lattice_matrix = IntegerMatrix::parse(rhs);
      } catch (const std::exception& ex) {
        throw ParseError(Kind::syntax, line, value_col, ex.what());
      }
    } else if (key == "lattice_p") {
      lattice_p = static_cast<int>(parse_int(rhs, line, value_col));
    } else if (key == "model") {
      const std::string v = trim(rhs);
      if (!is_model_name(v)) throw ParseError(Kind::invalid, line, value_col, "unknown model '" + v + "'");
      e.model = v;
      model_line = line;
    } else if (key == "values") {
      for (const auto& [piece, col] : split_top(rhs, rhs_col, ',')) {
        const auto peq = piece.find('=');
        if (peq == std::string::npos) throw ParseError(Kind::syntax, line, col, "expected <param> = <value>");
        const std::string name = trim(piece.substr(0, peq));
        const std::string val = trim(piece.substr(peq + 1));
        if (std::find(ctx.params.begin(), ctx.params.end(), name) == ctx.params.end())
          throw ParseError(Kind::unknown_parameter, line, col, "unknown parameter '" + name + "'");
        try {
          parse_numeric_value(val);
        } catch (const ParseError& pe) {
          throw ParseError(pe.kind(), line, col + static_cast<int>(peq) + 1, pe.message());
        }
        e.values.push_back({name, val});
      }
    } else {
      throw ParseError(Kind::syntax, line, lead, "unknown directive '" + key + "'");
    }
  }

  if (!dim) throw ParseError(Kind::invalid, last_line + 1, 1, "missing dim");
  std::vector<Form> diffs;
  for (const auto& f : d) diffs.push_back(f ? *f : Form(*dim, 2));
  e.algebra = StructureEquations(*dim, ctx.params, diffs, ctx.symbol);
  if (gram) {
    try {
      e.metric = HermitianMetric(*gram);
    } catch (const std::exception& ex) {
      throw ParseError(Kind::invalid, gram_line, 1, ex.what());
    }
  }
  if (lattice_matrix || lattice_p) e.lattice = LatticeRecipe{lattice_matrix, lattice_p.value_or(0)};
  try {
    validate(e);
  } catch (const std::exception& ex) {
    throw ParseError(Kind::invalid, model_line ? model_line : last_line, 1, ex.what());
  }
  return e;
}

std::string print_definition(const CatalogEntry& e) {
  const auto& g = e.algebra;
  const auto names = g.names();
  std::ostringstream os;
  if (!e.name.empty()) os << "name = " << e.name << "\n";
  os << "dim = " << g.dim() << "\n";
  if (!g.params().empty()) {
    os << "params = ";
    for (std::size_t i = 0; i < g.params().size(); ++i) os << (i ? ", " : "") << g.params()[i];
    os << "\n";
  }
  if (g.basis_symbol() != "e") os << "basis = " << g.basis_symbol() << "\n";
  for (int i = 0; i < g.dim(); ++i)
    if (!g.differential(i).is_zero()) os << "d " << names[i] << " = " << form_text(g.differential(i), names) << "\n";
  for (const auto& [key, side] : {std::pair{"J+", &e.j_plus}, std::pair{"J-", &e.j_minus}}) {
    if (!*side) continue;
    os << key << " = ";
    for (std::size_t r = 0; r < (*side)->size(); ++r) os << (r ? ", " : "") << form_text((**side)[r], names);
    os << "\n";
  }
  if (e.metric) {
    const auto& m = e.metric->gram();
    if (m == Matrix<Scalar>::identity(m.rows())) {
      os << "g = identity\n";
    } else {
      os << "g = ";
      for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << coefficient_text(CScalar(m(r, c)));
      }
      os << "\n";
    }
  }
  if (e.lattice) {
    if (e.lattice->matrix) os << "lattice_matrix = " << e.lattice->matrix->str() << "\n";
    if (e.lattice->p) os << "lattice_p = " << e.lattice->p << "\n";
  }
  if (!e.model.empty()) os << "model = " << e.model << "\n";
  if (!e.values.empty()) {
    os << "values = ";
    for (std::size_t i = 0; i < e.values.size(); ++i) os << (i ? ", " : "") << e.values[i].name << " = " << e.values[i].text;
    os << "\n";
  }
  return os.str();
}

double parse_numeric_value(const std::string& text) {
  Context ctx;
  ctx.params = {"pi"};
  const Value v = ExprParser(text, 1, 1, ctx).single();
  const Scalar s = real_scalar(v, 1, 1);
  return s.evaluate({{"pi", std::numbers::pi}});
}

Rational parse_rational_value(const std::string& text) {
  Context ctx;
  const Value v = ExprParser(text, 1, 1, ctx).single();
  return real_scalar(v, 1, 1).to_rational();
}

}  // namespace gkcheck
