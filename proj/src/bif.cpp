#include <cctype>
#include <map>
#include <optional>

#include "bnest/error.hpp"
#include "bnest/network.hpp"
#include "netio.hpp"

namespace bnest {

namespace {

struct Token {
  std::string text;
  int line = 1, col = 1;
  bool punct = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= s_.size()) break;
      Token t;
      t.line = line_;
      t.col = col_;
      char c = s_[i_];
      if (std::string_view("{}()[],;|").find(c) != std::string_view::npos) {
        t.text = std::string(1, c);
        t.punct = true;
        advance();
      } else if (c == '"') {
        advance();
        while (i_ < s_.size() && s_[i_] != '"') t.text += advance();
        if (i_ >= s_.size()) fail(t.line, t.col, "unterminated string");
        advance();
      } else {
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) &&
               std::string_view("{}()[],;|\"").find(s_[i_]) == std::string_view::npos &&
               !(s_[i_] == '/' && i_ + 1 < s_.size() && (s_[i_ + 1] == '/' || s_[i_ + 1] == '*')))
          t.text += advance();
      }
      out.push_back(std::move(t));
    }
    return out;
  }

  [[noreturn]] static void fail(int line, int col, const std::string& msg) {
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

 private:
  char advance() {
    char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance();
      } else if (s_.substr(i_, 2) == "//") {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (s_.substr(i_, 2) == "/*") {
        int l = line_, c = col_;
        advance();
        advance();
        while (i_ < s_.size() && s_.substr(i_, 2) != "*/") advance();
        if (i_ >= s_.size()) fail(l, c, "unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

class BifParser {
 public:
  BifParser(std::vector<Token> toks, const ParseOptions& opts) : t_(std::move(toks)), opts_(opts) {}

  Network run() {
    struct Pending {
      std::string node;
      std::vector<std::string> parents;
      std::map<std::vector<std::string>, std::vector<Coefficient>> rows;
      std::optional<std::vector<Coefficient>> table;
      Token where;
    };
    std::vector<Pending> probs;
    Network net;
    while (!at_end()) {
      const Token& kw = next();
      if (kw.text == "network") {
        next_word("network name");
        skip_block();
      } else if (kw.text == "variable") {
        std::string name = next_word("variable name").text;
        expect("{");
        std::vector<std::string> labels;
        bool have_type = false;
        while (!peek_is("}")) {
          const Token& k = next();
          if (k.text == "type") {
            const Token& d = next_word("variable type");
            if (d.text != "discrete") Lexer::fail(d.line, d.col, "only discrete variables are supported");
            expect("[");
            const Token& n = next_word("value count");
            expect("]");
            expect("{");
            while (true) {
              labels.push_back(next_word("value").text);
              if (peek_is(",")) {
                next();
                continue;
              }
              break;
            }
            expect("}");
            expect(";");
            if (std::to_string(labels.size()) != n.text)
              Lexer::fail(n.line, n.col, "declared " + n.text + " values but listed " + std::to_string(labels.size()));
            have_type = true;
          } else if (k.text == "property") {
            skip_statement();
          } else {
            Lexer::fail(k.line, k.col, "unexpected \"" + k.text + "\" in variable block");
          }
        }
        expect("}");
        if (!have_type) Lexer::fail(kw.line, kw.col, "variable " + name + " has no type");
        net.add_variable(name, std::move(labels));
      } else if (kw.text == "probability") {
        Pending p;
        p.where = kw;
        expect("(");
        p.node = next_word("node name").text;
        if (peek_is("|")) {
          next();
          while (true) {
            p.parents.push_back(next_word("parent name").text);
            if (peek_is(",")) {
              next();
              continue;
            }
            break;
          }
        }
        expect(")");
        expect("{");
        while (!peek_is("}")) {
          const Token& k = peek();
          if (k.text == "(" && k.punct) {
            next();
            std::vector<std::string> given;
            while (true) {
              given.push_back(next_word("parent value").text);
              if (peek_is(",")) {
                next();
                continue;
              }
              break;
            }
            expect(")");
            auto probs_row = numbers();
            if (p.rows.count(given)) Lexer::fail(k.line, k.col, "duplicate row for " + p.node);
            p.rows[given] = std::move(probs_row);
          } else if (k.text == "table") {
            next();
            if (!p.parents.empty())
              Lexer::fail(k.line, k.col, "\"table\" with parents is not supported; list rows explicitly");
            p.table = numbers();
          } else if (k.text == "property") {
            next();
            skip_statement();
          } else {
            Lexer::fail(k.line, k.col, "unexpected \"" + k.text + "\" in probability block");
          }
        }
        expect("}");
        probs.push_back(std::move(p));
      } else {
        Lexer::fail(kw.line, kw.col, "unexpected \"" + kw.text + "\"");
      }
    }

    for (auto& p : probs) {
      if (!net.is_node(p.node)) Lexer::fail(p.where.line, p.where.col, "probability for undeclared variable " + p.node);
      for (const auto& par : p.parents)
        if (!net.is_node(par)) Lexer::fail(p.where.line, p.where.col, "undeclared parent " + par);
      std::vector<std::vector<Coefficient>> rows;
      if (p.parents.empty()) {
        if (!p.table && p.rows.empty()) throw Error(ErrorKind::MissingCptRow, "no table for " + p.node);
        rows.push_back(p.table ? *p.table : p.rows.begin()->second);
      } else {
        // Row-major over parent value indices, first parent slowest.
        std::size_t combos = 1;
        for (const auto& par : p.parents) combos *= net.arity(par);
        for (std::size_t r = 0; r < combos; ++r) {
          std::vector<std::string> key(p.parents.size());
          std::size_t rest = r;
          for (std::size_t i = key.size(); i-- > 0;) {
            std::size_t n = net.arity(p.parents[i]);
            key[i] = net.labels(p.parents[i])[rest % n];
            rest /= n;
          }
          auto it = p.rows.find(key);
          if (it == p.rows.end()) {
            std::string k;
            for (const auto& s : key) k += (k.empty() ? "" : ", ") + s;
            throw Error(ErrorKind::MissingCptRow, p.node + " has no row for (" + k + ")");
          }
          rows.push_back(it->second);
          p.rows.erase(it);
        }
        if (!p.rows.empty()) {
          std::string k;
          for (const auto& s : p.rows.begin()->first) k += (k.empty() ? "" : ", ") + s;
          throw Error(ErrorKind::ValueOutOfDomain, p.node + " has a row for unknown parent values (" + k + ")");
        }
      }
      if (opts_.normalize)
        for (auto& r : rows) detail::normalize_row(r);
      net.set_cpt(p.node, p.parents, std::move(rows));
    }
    net.validate();
    return net;
  }

 private:
  bool at_end() const { return pos_ >= t_.size(); }

  const Token& peek() const {
    if (at_end()) eof();
    return t_[pos_];
  }

  bool peek_is(const char* s) const { return !at_end() && t_[pos_].punct && t_[pos_].text == s; }

  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  const Token& next_word(const char* what) {
    const Token& t = next();
    if (t.punct) Lexer::fail(t.line, t.col, std::string("expected ") + what + ", found \"" + t.text + "\"");
    return t;
  }

  void expect(const char* s) {
    const Token& t = next();
    if (!t.punct || t.text != s) Lexer::fail(t.line, t.col, std::string("expected \"") + s + "\", found \"" + t.text + "\"");
  }

  [[noreturn]] void eof() const {
    int line = t_.empty() ? 1 : t_.back().line;
    int col = t_.empty() ? 1 : t_.back().col;
    Lexer::fail(line, col, "unexpected end of input");
  }

  void skip_block() {
    expect("{");
    int depth = 1;
    while (depth > 0) {
      const Token& t = next();
      if (t.punct && t.text == "{") ++depth;
      if (t.punct && t.text == "}") --depth;
    }
  }

  void skip_statement() {
    while (!peek_is(";")) next();
    next();
  }

  std::vector<Coefficient> numbers() {
    std::vector<Coefficient> out;
    while (true) {
      const Token& t = next_word("probability");
      auto r = parse_rational(t.text);
      if (!r) Lexer::fail(t.line, t.col, "invalid probability \"" + t.text + "\"");
      out.emplace_back(*r);
      if (peek_is(",")) {
        next();
        continue;
      }
      break;
    }
    expect(";");
    return out;
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
};

std::string prob_string(const Coefficient& c) {
  if (c.is_rational()) return rational_exact_decimal(c.rational());
  return c.to_string();
}

}  // namespace

Network parse_bif(std::string_view text, const ParseOptions& opts) {
  return BifParser(Lexer(text).run(), opts).run();
}

std::string render_bif(const Network& net) {
  if (net.has_parameters()) throw Error(ErrorKind::InvalidArgument, "BIF cannot hold parameterized probabilities");
  std::string out = "network unknown {\n}\n";
  for (const auto& v : net.nodes()) {
    const auto& ls = net.labels(v);
    out += "variable " + v + " {\n  type discrete [ " + std::to_string(ls.size()) + " ] { ";
    for (std::size_t i = 0; i < ls.size(); ++i) out += (i ? ", " : "") + ls[i];
    out += " };\n}\n";
  }
  for (const auto& v : net.nodes()) {
    const auto& dep = net.dep(v);
    out += "probability ( " + v;
    for (std::size_t i = 0; i < dep.size(); ++i) out += (i ? ", " : " | ") + dep[i];
    out += " ) {\n";
    const auto& rows = net.cpt_rows(v);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::string probs;
      for (std::size_t k = 0; k < rows[r].size(); ++k) probs += (k ? ", " : "") + prob_string(rows[r][k]);
      if (dep.empty()) {
        out += "  table " + probs + ";\n";
        continue;
      }
      std::vector<std::string> given(dep.size());
      std::size_t rest = r;
      for (std::size_t i = dep.size(); i-- > 0;) {
        std::size_t n = net.arity(dep[i]);
        given[i] = net.labels(dep[i])[rest % n];
        rest /= n;
      }
      out += "  (";
      for (std::size_t i = 0; i < given.size(); ++i) out += (i ? ", " : "") + given[i];
      out += ") " + probs + ";\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace bnest
