#include "qlm/freelie.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qlm/errors.hpp"

namespace qlm {

namespace {

// Strict lexicographic order on generator-index words.
bool word_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// w is Lyndon iff it is strictly smaller than each of its proper suffixes.
bool is_lyndon(const std::vector<int>& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::vector<int> suffix(w.begin() + i, w.end());
        if (!word_less(w, suffix)) return false;
    }
    return true;
}

}  // namespace

std::shared_ptr<const LieBasis> LieBasis::make(std::vector<Generator> generators,
                                               int truncation) {
    if (truncation < 1) throw ValidationError("truncation degree must be >= 1");
    for (const auto& g : generators) {
        if (g.degree < 1)
            throw ValidationError("generator '" + g.name + "' has degree < 1; dgl's here are connected");
        if (g.name.empty()) throw ValidationError("empty generator name");
    }
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (generators[i].name == generators[j].name)
                throw ValidationError("duplicate generator name '" + generators[i].name + "'");
    auto basis = std::shared_ptr<LieBasis>(new LieBasis());
    basis->gens_ = std::move(generators);
    basis->trunc_ = truncation;
    basis->build();
    return basis;
}

int LieBasis::intern_leaf(int gen) { return leaf_index_[gen]; }

int LieBasis::intern_node(int left, int right) {
    auto key = std::make_pair(left, right);
    auto it = node_index_.find(key);
    if (it != node_index_.end()) return it->second;
    Word w;
    w.left = left;
    w.right = right;
    w.degree = trees_[left].degree + trees_[right].degree;
    w.length = trees_[left].length + trees_[right].length;
    w.foliage = trees_[left].foliage;
    w.foliage.insert(w.foliage.end(), trees_[right].foliage.begin(),
                     trees_[right].foliage.end());
    trees_.push_back(std::move(w));
    int id = static_cast<int>(trees_.size()) - 1;
    node_index_.emplace(key, id);
    return id;
}

int LieBasis::standard_bracketing(const std::vector<int>& lyndon) {
    if (lyndon.size() == 1) return intern_leaf(lyndon[0]);
    // Split at the lexicographically smallest proper suffix.
    std::size_t best = 1;
    for (std::size_t i = 2; i < lyndon.size(); ++i) {
        std::vector<int> si(lyndon.begin() + i, lyndon.end());
        std::vector<int> sb(lyndon.begin() + best, lyndon.end());
        if (word_less(si, sb)) best = i;
    }
    int l = standard_bracketing(std::vector<int>(lyndon.begin(), lyndon.begin() + best));
    int r = standard_bracketing(std::vector<int>(lyndon.begin() + best, lyndon.end()));
    return intern_node(l, r);
}

void LieBasis::build() {
    leaf_index_.resize(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        Word w;
        w.generator = static_cast<int>(i);
        w.degree = gens_[i].degree;
        w.length = 1;
        w.foliage = {static_cast<int>(i)};
        trees_.push_back(std::move(w));
        leaf_index_[i] = static_cast<int>(trees_.size()) - 1;
    }
    // Enumerate Lyndon words of total degree <= N by depth-first search in
    // lexicographic order (degree-pruned; Lyndon-ness of prefixes cannot be
    // used for pruning).
    std::vector<std::vector<int>> lyndon_words;
    std::vector<int> cur;
    auto degree_of_word = [&](const std::vector<int>& w) {
        int d = 0;
        for (int g : w) d += gens_[g].degree;
        return d;
    };
    std::function<void(int)> dfs = [&](int deg) {
        for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
            int nd = deg + gens_[g].degree;
            if (nd > trunc_) continue;
            cur.push_back(g);
            if (is_lyndon(cur)) lyndon_words.push_back(cur);
            dfs(nd);
            cur.pop_back();
        }
    };
    dfs(0);
    (void)degree_of_word;

    struct Candidate {
        int tree;
        int degree;
        int length;
        std::vector<int> foliage;
    };
    std::vector<Candidate> cands;
    for (const auto& w : lyndon_words) {
        int t = standard_bracketing(w);
        cands.push_back({t, trees_[t].degree, trees_[t].length, trees_[t].foliage});
        // Squares of odd-degree Lyndon bracketings survive graded antisymmetry.
        if (trees_[t].degree % 2 == 1 && 2 * trees_[t].degree <= trunc_) {
            int sq = intern_node(t, t);
            cands.push_back({sq, trees_[sq].degree, trees_[sq].length, trees_[sq].foliage});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.length != b.length) return a.length < b.length;
        return word_less(a.foliage, b.foliage);
    });
    basis_pos_of_tree_.assign(trees_.size() * 2 + 16, -1);
    for (const auto& c : cands) {
        int pos = static_cast<int>(basis_ids_.size());
        basis_ids_.push_back(c.tree);
        if (c.tree >= static_cast<int>(basis_pos_of_tree_.size()))
            basis_pos_of_tree_.resize(c.tree + 1, -1);
        basis_pos_of_tree_[c.tree] = pos;
        by_degree_[c.degree].push_back(pos);
        std::vector<int> content = c.foliage;
        std::sort(content.begin(), content.end());
        by_content_[content].push_back(pos);
    }
    expansions_.resize(basis_ids_.size());
}

int LieBasis::generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return -1;
}

const std::vector<int>& LieBasis::basis(int degree) const {
    static const std::vector<int> empty;
    auto it = by_degree_.find(degree);
    return it == by_degree_.end() ? empty : it->second;
}

int LieBasis::degree_of(int basis_id) const { return trees_[basis_ids_[basis_id]].degree; }
int LieBasis::length_of(int basis_id) const { return trees_[basis_ids_[basis_id]].length; }
const LieBasis::Word& LieBasis::word(int basis_id) const { return trees_[basis_ids_[basis_id]]; }

std::string LieBasis::word_string(int basis_id) const {
    std::function<std::string(int)> render = [&](int tree) -> std::string {
        const Word& w = trees_[tree];
        if (w.left < 0) return gens_[w.generator].name;
        return "[" + render(w.left) + "," + render(w.right) + "]";
    };
    return render(basis_ids_[basis_id]);
}

GradedVectorSpace LieBasis::generator_space() const {
    GradedVectorSpace v;
    for (const auto& g : gens_) v.add_basis_element(g.degree, g.name);
    return v;
}

GradedVectorSpace LieBasis::lie_space() const {
    GradedVectorSpace v;
    for (const auto& [deg, ids] : by_degree_)
        for (int id : ids) v.add_basis_element(deg, word_string(id));
    return v;
}

LieElement LieBasis::zero() const { return LieElement(shared_from_this()); }

LieElement LieBasis::generator_element(const std::string& name) const {
    int gi = generator_index(name);
    if (gi < 0) throw ValidationError("unknown generator '" + name + "'");
    int pos = basis_pos_of_tree_[leaf_index_[gi]];
    return basis_element(pos);
}

LieElement LieBasis::basis_element(int basis_id) const {
    std::map<int, Rational> c;
    c[basis_id] = 1;
    return LieElement(shared_from_this(), std::move(c));
}

const TensorPoly& LieBasis::expansion(int basis_id) const {
    if (expansions_[basis_id]) return *expansions_[basis_id];
    std::function<TensorPoly(int)> expand_tree = [&](int tree) -> TensorPoly {
        const Word& w = trees_[tree];
        TensorPoly out;
        if (w.left < 0) {
            out[{w.generator}] = 1;
            return out;
        }
        // Subtrees of basis words are basis words; reuse their cached
        // expansions when available.
        int lpos = w.left < static_cast<int>(basis_pos_of_tree_.size())
                       ? basis_pos_of_tree_[w.left] : -1;
        int rpos = w.right < static_cast<int>(basis_pos_of_tree_.size())
                       ? basis_pos_of_tree_[w.right] : -1;
        TensorPoly el = lpos >= 0 ? expansion(lpos) : expand_tree(w.left);
        TensorPoly er = rpos >= 0 ? expansion(rpos) : expand_tree(w.right);
        bool both_odd = (trees_[w.left].degree % 2) && (trees_[w.right].degree % 2);
        Rational sign = both_odd ? 1 : -1;  // -(-1)^{deg l deg r}
        for (const auto& [wl, cl] : el)
            for (const auto& [wr, cr] : er) {
                std::vector<int> ab = wl;
                ab.insert(ab.end(), wr.begin(), wr.end());
                std::vector<int> ba = wr;
                ba.insert(ba.end(), wl.begin(), wl.end());
                Rational c = cl * cr;
                out[ab] += c;
                out[ba] += sign * c;
            }
        for (auto it = out.begin(); it != out.end();)
            it = (it->second == 0) ? out.erase(it) : std::next(it);
        return out;
    };
    expansions_[basis_id] = std::make_unique<TensorPoly>(expand_tree(basis_ids_[basis_id]));
    return *expansions_[basis_id];
}

const LieBasis::ContentBlock& LieBasis::content_block(const std::vector<int>& content) const {
    auto it = blocks_.find(content);
    if (it != blocks_.end()) return *it->second;
    auto block = std::make_unique<ContentBlock>();
    auto mem = by_content_.find(content);
    if (mem != by_content_.end()) block->members = mem->second;
    for (int id : block->members)
        for (const auto& [w, c] : expansion(id))
            if (!block->row_index.count(w)) {
                block->row_index.emplace(w, block->row_words.size());
                block->row_words.push_back(w);
            }
    QMatrix m(block->row_words.size(), block->members.size());
    for (std::size_t j = 0; j < block->members.size(); ++j)
        for (const auto& [w, c] : expansion(block->members[j]))
            m.at(block->row_index.at(w), j) = c;
    block->solver = std::make_shared<LinearSolver>(m);
    if (block->solver->rank() != block->members.size())
        throw InvariantError("Lie basis words linearly dependent within a content block");
    it = blocks_.emplace(content, std::move(block)).first;
    return *it->second;
}

std::map<int, Rational> LieBasis::from_tensor(const TensorPoly& poly) const {
    std::map<std::vector<int>, TensorPoly> by_content;
    for (const auto& [w, c] : poly) {
        if (c == 0) continue;
        std::vector<int> content = w;
        std::sort(content.begin(), content.end());
        by_content[content][w] = c;
    }
    std::map<int, Rational> out;
    for (const auto& [content, part] : by_content) {
        const ContentBlock& block = content_block(content);
        if (block.members.empty())
            throw InvariantError("tensor polynomial not in the free Lie span (empty block)");
        std::vector<Rational> rhs(block.row_words.size());
        for (const auto& [w, c] : part) {
            auto ri = block.row_index.find(w);
            if (ri == block.row_index.end())
                throw InvariantError("tensor polynomial not in the free Lie span (unknown word)");
            rhs[ri->second] = c;
        }
        auto sol = block.solver->solve(rhs);
        if (!sol) throw InvariantError("tensor polynomial not in the free Lie span");
        for (std::size_t j = 0; j < block.members.size(); ++j)
            if ((*sol)[j] != 0) out[block.members[j]] += (*sol)[j];
    }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

const std::map<int, Rational>& LieBasis::bracket_words(int u, int v) const {
    auto key = std::make_pair(u, v);
    auto it = bracket_cache_.find(key);
    if (it != bracket_cache_.end()) return it->second;
    int du = degree_of(u), dv = degree_of(v);
    if (du + dv > trunc_)
        throw TruncationError("bracket degree " + std::to_string(du + dv) +
                              " exceeds truncation " + std::to_string(trunc_));
    const TensorPoly& eu = expansion(u);
    const TensorPoly& ev = expansion(v);
    bool both_odd = (du % 2) && (dv % 2);
    Rational sign = both_odd ? 1 : -1;
    TensorPoly poly;
    for (const auto& [wu, cu] : eu)
        for (const auto& [wv, cv] : ev) {
            std::vector<int> ab = wu;
            ab.insert(ab.end(), wv.begin(), wv.end());
            std::vector<int> ba = wv;
            ba.insert(ba.end(), wu.begin(), wu.end());
            Rational c = cu * cv;
            poly[ab] += c;
            poly[ba] += sign * c;
        }
    for (auto pit = poly.begin(); pit != poly.end();)
        pit = (pit->second == 0) ? poly.erase(pit) : std::next(pit);
    auto coords = from_tensor(poly);
    it = bracket_cache_.emplace(key, std::move(coords)).first;
    return it->second;
}

std::pair<int, std::size_t> LieBasis::degree_position(int basis_id) const {
    int deg = degree_of(basis_id);
    const auto& ids = basis(deg);
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == basis_id) return {deg, i};
    throw InvariantError("basis id not found in its degree");
}

LieElement::LieElement(std::shared_ptr<const LieBasis> basis, std::map<int, Rational> coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
    for (auto it = coords_.begin(); it != coords_.end();)
        it = (it->second == 0) ? coords_.erase(it) : std::next(it);
}

int LieElement::degree() const {
    if (coords_.empty()) throw InvariantError("degree of the zero element is undefined");
    int d = basis_->degree_of(coords_.begin()->first);
    for (const auto& [id, c] : coords_)
        if (basis_->degree_of(id) != d)
            throw InvariantError("degree of an inhomogeneous element");
    return d;
}

bool LieElement::is_homogeneous() const {
    if (coords_.empty()) return true;
    int d = basis_->degree_of(coords_.begin()->first);
    for (const auto& [id, c] : coords_)
        if (basis_->degree_of(id) != d) return false;
    return true;
}

LieElement LieElement::homogeneous_component(int degree) const {
    std::map<int, Rational> c;
    for (const auto& [id, v] : coords_)
        if (basis_->degree_of(id) == degree) c[id] = v;
    return LieElement(basis_, std::move(c));
}

LieElement LieElement::length_component(int length) const {
    std::map<int, Rational> c;
    for (const auto& [id, v] : coords_)
        if (basis_->length_of(id) == length) c[id] = v;
    return LieElement(basis_, std::move(c));
}

LieElement LieElement::operator+(const LieElement& o) const {
    if (!basis_) return o;
    if (!o.basis_) return *this;
    if (basis_ != o.basis_) throw InvariantError("mixing elements of different Lie bases");
    std::map<int, Rational> c = coords_;
    for (const auto& [id, v] : o.coords_) c[id] += v;
    return LieElement(basis_, std::move(c));
}

LieElement LieElement::operator-(const LieElement& o) const { return *this + (-o); }

LieElement LieElement::operator*(const Rational& scalar) const {
    std::map<int, Rational> c;
    if (scalar != 0)
        for (const auto& [id, v] : coords_) c[id] = v * scalar;
    return LieElement(basis_, std::move(c));
}

LieElement LieElement::operator-() const { return *this * Rational(-1); }

bool LieElement::operator==(const LieElement& o) const { return coords_ == o.coords_; }

std::string LieElement::str() const {
    if (coords_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [id, c] : coords_) {
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (a != 1) os << rat_str(a) << "*";
        os << basis_->word_string(id);
        first = false;
    }
    return os.str();
}

TensorPoly LieElement::expand() const {
    TensorPoly out;
    for (const auto& [id, c] : coords_)
        for (const auto& [w, e] : basis_->expansion(id)) out[w] += c * e;
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
    if (!x.basis_ || x.is_zero()) return x.basis_ ? x.basis_->zero() : y * Rational(0);
    if (!y.basis_ || y.is_zero()) return y.basis_ ? y.basis_->zero() : x * Rational(0);
    if (x.basis_ != y.basis_) throw InvariantError("bracket of elements over different bases");
    std::map<int, Rational> out;
    for (const auto& [u, cu] : x.coords_)
        for (const auto& [v, cv] : y.coords_) {
            for (const auto& [w, c] : x.basis_->bracket_words(u, v)) out[w] += cu * cv * c;
        }
    return LieElement(x.basis_, std::move(out));
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Lexer {
    std::string s;
    std::size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    char get() {
        skip();
        return i < s.size() ? s[i++] : '\0';
    }
};

class ElementParser {
public:
    ElementParser(std::shared_ptr<const LieBasis> basis, const std::string& text)
        : basis_(std::move(basis)) {
        lex_.s = text;
    }

    LieElement parse() {
        LieElement e = expr();
        if (lex_.peek() != '\0')
            throw ValidationError("trailing input in Lie element at '" +
                                  lex_.s.substr(lex_.i) + "'");
        return e;
    }

private:
    LieElement expr() {
        LieElement acc = basis_->zero();
        bool neg = false;
        if (lex_.peek() == '-') { lex_.get(); neg = true; }
        else if (lex_.peek() == '+') lex_.get();
        acc = acc + term(neg);
        while (lex_.peek() == '+' || lex_.peek() == '-') {
            bool minus = lex_.get() == '-';
            acc = acc + term(minus);
        }
        return acc;
    }

    LieElement term(bool negated) {
        Rational coef = negated ? -1 : 1;
        if (std::isdigit(static_cast<unsigned char>(lex_.peek()))) {
            coef *= number();
            if (lex_.peek() == '*') {
                lex_.get();
            } else {
                if (coef != 0)
                    throw ValidationError("bare nonzero constant in Lie element");
                return basis_->zero();
            }
        }
        return factor() * coef;
    }

    Rational number() {
        std::string num = digits();
        if (lex_.peek() == '/') {
            lex_.get();
            std::string den = digits();
            return rat_parse(num + "/" + den);
        }
        return rat_parse(num);
    }

    std::string digits() {
        lex_.skip();
        std::string out;
        while (lex_.i < lex_.s.size() &&
               std::isdigit(static_cast<unsigned char>(lex_.s[lex_.i])))
            out.push_back(lex_.s[lex_.i++]);
        if (out.empty()) throw ValidationError("expected number in Lie element");
        return out;
    }

    LieElement factor() {
        char c = lex_.peek();
        if (c == '[') {
            lex_.get();
            LieElement l = expr();
            if (lex_.get() != ',') throw ValidationError("expected ',' in bracket");
            LieElement r = expr();
            if (lex_.get() != ']') throw ValidationError("expected ']' in bracket");
            return bracket(l, r);
        }
        std::string name = identifier();
        return basis_->generator_element(name);
    }

    std::string identifier() {
        lex_.skip();
        std::string out;
        while (lex_.i < lex_.s.size()) {
            char c = lex_.s[lex_.i];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
                out.push_back(c);
                ++lex_.i;
            } else {
                break;
            }
        }
        if (out.empty())
            throw ValidationError("expected generator name in Lie element at '" +
                                  lex_.s.substr(lex_.i) + "'");
        return out;
    }

    std::shared_ptr<const LieBasis> basis_;
    Lexer lex_;
};

}  // namespace

LieElement parse_lie_element(const std::shared_ptr<const LieBasis>& basis,
                             const std::string& text) {
    return ElementParser(basis, text).parse();
}

LieElement transfer(const LieElement& x, const std::shared_ptr<const LieBasis>& target) {
    if (x.is_zero()) return target->zero();
    const auto& src = x.basis();
    std::map<int, LieElement> cache;
    std::function<LieElement(int)> go = [&](int tree) -> LieElement {
        auto it = cache.find(tree);
        if (it != cache.end()) return it->second;
        const LieBasis::Word& w = src->word_tree(tree);
        LieElement out = (w.left < 0)
            ? target->generator_element(src->generators()[w.generator].name)
            : bracket(go(w.left), go(w.right));
        cache.emplace(tree, out);
        return out;
    };
    LieElement out = target->zero();
    for (const auto& [id, c] : x.coords()) out = out + go(src->tree_of(id)) * c;
    return out;
}

// ---------------------------------------------------------------------------
// Derivation

Derivation::Derivation(std::shared_ptr<const LieBasis> basis, int degree,
                       std::vector<LieElement> generator_values)
    : basis_(std::move(basis)), degree_(degree), values_(std::move(generator_values)) {
    if (values_.size() != basis_->generators().size())
        throw ValidationError("derivation needs one value per generator");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const auto& v = values_[i];
        if (v.is_zero()) continue;
        if (v.basis() != basis_)
            throw ValidationError("derivation value lives in a different basis");
        if (!v.is_homogeneous() ||
            v.degree() != basis_->generators()[i].degree + degree_)
            throw ValidationError("derivation value for '" + basis_->generators()[i].name +
                                  "' is not homogeneous of the declared degree");
    }
}

LieElement Derivation::apply_to_word(int basis_id) const {
    auto it = word_cache_.find(basis_id);
    if (it != word_cache_.end()) return it->second;
    std::function<LieElement(int)> go = [&](int tree) -> LieElement {
        const LieBasis::Word& w = basis_->word_tree(tree);
        if (w.left < 0) return values_[w.generator];
        int lpos = basis_->basis_pos(w.left);
        int rpos = basis_->basis_pos(w.right);
        if (lpos < 0 || rpos < 0) throw InvariantError("subtree of a basis word not in basis");
        LieElement el = basis_->basis_element(lpos);
        LieElement er = basis_->basis_element(rpos);
        LieElement tl = go(w.left);
        LieElement tr = go(w.right);
        bool flip = (degree_ % 2) && (basis_->word_tree(w.left).degree % 2);
        LieElement out = bracket(tl, er) + bracket(el, tr) * Rational(flip ? -1 : 1);
        return out;
    };
    LieElement out = go(basis_->tree_of(basis_id));
    word_cache_.emplace(basis_id, out);
    return out;
}

LieElement Derivation::apply(const LieElement& x) const {
    if (x.is_zero()) return basis_->zero();
    if (x.basis() != basis_) throw InvariantError("derivation applied across bases");
    LieElement out = basis_->zero();
    for (const auto& [id, c] : x.coords()) out = out + apply_to_word(id) * c;
    return out;
}

// ---------------------------------------------------------------------------
// FreeDGL

FreeDGL::FreeDGL(std::shared_ptr<const LieBasis> basis,
                 std::vector<LieElement> differential_values)
    : basis_(basis), d_(basis, -1, std::move(differential_values)) {
    for (std::size_t i = 0; i < basis_->generators().size(); ++i) {
        LieElement dd = d_.apply(d_.value_on_generator(i));
        if (!dd.is_zero())
            throw ValidationError("d^2 != 0 on generator '" + basis_->generators()[i].name +
                                  "': d(d g) = " + dd.str());
    }
}

FreeDGL FreeDGL::make(const std::vector<Generator>& generators, int truncation,
                      const std::map<std::string, std::string>& differential_text) {
    auto basis = LieBasis::make(generators, truncation);
    std::vector<LieElement> values;
    for (const auto& g : generators) {
        auto it = differential_text.find(g.name);
        if (it == differential_text.end() || it->second.empty() || it->second == "0")
            values.push_back(basis->zero());
        else
            values.push_back(parse_lie_element(basis, it->second));
    }
    return FreeDGL(basis, std::move(values));
}

GradedLinearMap FreeDGL::linear_part_map() const {
    GradedVectorSpace v = basis_->generator_space();
    GradedLinearMap dv(v, v, -1);
    const auto& gens = basis_->generators();
    for (std::size_t j = 0; j < gens.size(); ++j) {
        LieElement lin = d_.value_on_generator(j).length_component(1);
        // Column index of generator j within its degree.
        const auto& src_names = v.basis(gens[j].degree);
        std::size_t col =
            std::find(src_names.begin(), src_names.end(), gens[j].name) - src_names.begin();
        for (const auto& [id, c] : lin.coords()) {
            const LieBasis::Word& w = basis_->word(id);
            const auto& tgt_names = v.basis(w.degree);
            const std::string& nm = basis_->generators()[w.generator].name;
            std::size_t row = std::find(tgt_names.begin(), tgt_names.end(), nm) - tgt_names.begin();
            dv.set_entry(gens[j].degree, row, col, c);
        }
    }
    return dv;
}

ChainComplex FreeDGL::linear_part() const {
    return ChainComplex(basis_->generator_space(), linear_part_map());
}

bool FreeDGL::is_minimal() const { return linear_part_map().is_zero(); }

const ChainComplex& FreeDGL::chain_complex() const {
    if (complex_) return *complex_;
    GradedVectorSpace space = basis_->lie_space();
    GradedLinearMap d(space, space, -1);
    for (const auto& [deg, ids] : space.components()) {
        if (ids.empty()) continue;
        const auto& col_ids = basis_->basis(deg);
        for (std::size_t j = 0; j < col_ids.size(); ++j) {
            LieElement img = d_.apply_to_word(col_ids[j]);
            for (const auto& [id, c] : img.coords()) {
                auto [tdeg, row] = basis_->degree_position(id);
                d.set_entry(deg, row, j, c);
            }
        }
    }
    complex_ = std::make_shared<ChainComplex>(std::move(space), std::move(d));
    return *complex_;
}

// ---------------------------------------------------------------------------
// DGLMorphism

DGLMorphism::DGLMorphism(const FreeDGL& source, const FreeDGL& target,
                         std::vector<LieElement> images, bool check)
    : source_(std::make_shared<FreeDGL>(source)),
      target_(std::make_shared<FreeDGL>(target)),
      images_(std::move(images)) {
    const auto& gens = source.generators();
    if (images_.size() != gens.size())
        throw ValidationError("morphism needs one image per source generator");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& img = images_[i];
        if (img.is_zero()) continue;
        if (img.basis() != target.basis())
            throw ValidationError("morphism image lives outside the target");
        if (!img.is_homogeneous() || img.degree() != gens[i].degree)
            throw ValidationError("morphism image for '" + gens[i].name +
                                  "' is not degree-preserving");
    }
    if (check) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            LieElement lhs = apply(source.differential().value_on_generator(i));
            LieElement rhs = target.d(images_[i]);
            if (!(lhs == rhs))
                throw ValidationError("not a dgl morphism: fails on generator '" +
                                      gens[i].name + "'");
        }
    }
}

DGLMorphism DGLMorphism::identity(const FreeDGL& dgl) {
    std::vector<LieElement> images;
    for (const auto& g : dgl.generators()) images.push_back(dgl.basis()->generator_element(g.name));
    return DGLMorphism(dgl, dgl, std::move(images), false);
}

DGLMorphism DGLMorphism::inclusion(const FreeDGL& source, const FreeDGL& target) {
    std::vector<LieElement> images;
    for (const auto& g : source.generators()) {
        int gi = target.basis()->generator_index(g.name);
        if (gi < 0 || target.generators()[gi].degree != g.degree)
            throw ValidationError("inclusion: generator '" + g.name +
                                  "' missing in target (or degree mismatch)");
        images.push_back(target.basis()->generator_element(g.name));
    }
    return DGLMorphism(source, target, std::move(images));
}

LieElement DGLMorphism::apply_tree(int tree_id) const {
    const LieBasis::Word& w = source_->basis()->word_tree(tree_id);
    if (w.left < 0) return images_[w.generator];
    return bracket(apply_tree(w.left), apply_tree(w.right));
}

LieElement DGLMorphism::apply(const LieElement& x) const {
    if (x.is_zero()) return target_->basis()->zero();
    if (x.basis() != source_->basis())
        throw InvariantError("morphism applied to element of a different source");
    LieElement out = target_->basis()->zero();
    for (const auto& [id, c] : x.coords()) {
        auto it = word_cache_.find(id);
        if (it == word_cache_.end())
            it = word_cache_.emplace(id, apply_tree(source_->basis()->tree_of(id))).first;
        out = out + it->second * c;
    }
    return out;
}

DGLMorphism DGLMorphism::compose_after(const DGLMorphism& first) const {
    if (first.target_->basis() != source_->basis())
        throw InvariantError("morphism composition mismatch");
    std::vector<LieElement> images;
    for (const auto& img : first.images_) images.push_back(apply(img));
    return DGLMorphism(first.source(), target(), std::move(images), false);
}

GradedLinearMap DGLMorphism::as_graded_map() const {
    GradedVectorSpace src = source_->basis()->lie_space();
    GradedVectorSpace tgt = target_->basis()->lie_space();
    GradedLinearMap out(src, tgt, 0);
    for (const auto& [deg, names] : src.components()) {
        const auto& ids = source_->basis()->basis(deg);
        for (std::size_t j = 0; j < ids.size(); ++j) {
            LieElement img = apply(source_->basis()->basis_element(ids[j]));
            for (const auto& [id, c] : img.coords()) {
                auto [tdeg, row] = target_->basis()->degree_position(id);
                out.set_entry(deg, row, j, c);
            }
        }
    }
    return out;
}

}  // namespace qlm
