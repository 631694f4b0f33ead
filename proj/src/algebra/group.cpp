#include "swarmauth/algebra/group.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swarmauth/error.hpp"

namespace swarmauth::algebra {

namespace {

constexpr std::uint8_t kIdentityMarker = 0x00;
constexpr std::uint8_t kAffineTag = 0x04;
constexpr std::size_t kToyWidth = 32;

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::size_t coord_width(const mpz_class& p) {
  return (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
}

// Jacobian-coordinate arithmetic over F_p. (X, Y, Z) represents the affine
// point (X/Z^2, Y/Z^3); Z = 0 is the point at infinity. Temporaries are
// members so the hot loop does not reallocate.
class JacobianArith {
 public:
  explicit JacobianArith(const CurveParams& c)
      : p_(c.p), a_(c.a), a_is_minus3_(mod_reduce(c.a + 3, c.p) == 0) {}

  struct Point {
    mpz_class x, y, z;
  };

  void reduce(mpz_class& v) const { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t()); }

  void dbl(Point& P) {
    if (P.z == 0) return;
    if (P.y == 0) {
      P.z = 0;
      return;
    }
    zz_ = P.z * P.z;
    reduce(zz_);
    if (a_is_minus3_) {
      t1_ = P.x - zz_;
      t2_ = P.x + zz_;
      m_ = t1_ * t2_;
      reduce(m_);
      m_ *= 3;
    } else {
      t1_ = P.x * P.x;
      reduce(t1_);
      t2_ = zz_ * zz_;
      reduce(t2_);
      m_ = 3 * t1_ + a_ * t2_;
    }
    reduce(m_);
    yy_ = P.y * P.y;
    reduce(yy_);
    s_ = P.x * yy_;
    s_ *= 4;
    reduce(s_);
    // Z3 before X/Y are overwritten.
    P.z = P.y * P.z;
    P.z *= 2;
    reduce(P.z);
    t1_ = m_ * m_;
    t1_ -= 2 * s_;
    reduce(t1_);
    P.x = t1_;
    t2_ = yy_ * yy_;
    t2_ *= 8;
    t1_ = s_ - P.x;
    P.y = m_ * t1_;
    P.y -= t2_;
    reduce(P.y);
  }

  // P += (x2, y2) with (x2, y2) affine and finite.
  void add_affine(Point& P, const mpz_class& x2, const mpz_class& y2) {
    if (P.z == 0) {
      P.x = x2;
      P.y = y2;
      P.z = 1;
      return;
    }
    zz_ = P.z * P.z;
    reduce(zz_);
    u2_ = x2 * zz_;
    reduce(u2_);
    s2_ = y2 * P.z;
    reduce(s2_);
    s2_ *= zz_;
    reduce(s2_);
    h_ = u2_ - P.x;
    reduce(h_);
    r_ = s2_ - P.y;
    reduce(r_);
    if (h_ == 0) {
      if (r_ == 0) {
        dbl(P);
      } else {
        P.z = 0;
      }
      return;
    }
    hh_ = h_ * h_;
    reduce(hh_);
    hhh_ = h_ * hh_;
    reduce(hhh_);
    v_ = P.x * hh_;
    reduce(v_);
    t1_ = r_ * r_;
    t1_ -= hhh_;
    t1_ -= 2 * v_;
    reduce(t1_);
    P.x = t1_;
    t2_ = v_ - P.x;
    t2_ *= r_;
    t1_ = P.y * hhh_;
    P.y = t2_ - t1_;
    reduce(P.y);
    P.z *= h_;
    reduce(P.z);
  }

  // Returns false for the point at infinity.
  bool to_affine(const Point& P, mpz_class& x, mpz_class& y) const {
    if (P.z == 0) return false;
    mpz_class zinv;
    mpz_invert(zinv.get_mpz_t(), P.z.get_mpz_t(), p_.get_mpz_t());
    mpz_class zinv2 = zinv * zinv;
    reduce(zinv2);
    x = P.x * zinv2;
    reduce(x);
    mpz_class zinv3 = zinv2 * zinv;
    reduce(zinv3);
    y = P.y * zinv3;
    reduce(y);
    return true;
  }

 private:
  const mpz_class& p_;
  const mpz_class& a_;
  bool a_is_minus3_;
  mpz_class zz_, t1_, t2_, m_, yy_, s_, u2_, s2_, h_, r_, hh_, hhh_, v_;
};

bool on_curve(const CurveParams& c, const mpz_class& x, const mpz_class& y) {
  if (x < 0 || x >= c.p || y < 0 || y >= c.p) return false;
  mpz_class lhs = y * y;
  mpz_class rhs = x * x * x + c.a * x + c.b;
  return mod_reduce(lhs - rhs, c.p) == 0;
}

// Double-and-add over the affine point (x, y). Returns false for infinity.
bool curve_mult(const CurveParams& c, const mpz_class& k, const mpz_class& x,
                const mpz_class& y, mpz_class& out_x, mpz_class& out_y) {
  JacobianArith arith(c);
  JacobianArith::Point acc{0, 1, 0};
  const long top = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1;
  if (k == 0) return false;
  for (long bit = top; bit >= 0; --bit) {
    arith.dbl(acc);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) arith.add_affine(acc, x, y);
  }
  return arith.to_affine(acc, out_x, out_y);
}

mpz_class parse_decimal_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw ConfigError(std::string("curve parameters: missing decimal string field '") + key + "'");
  }
  mpz_class v;
  const std::string text = j.at(key).get<std::string>();
  if (text.empty() || v.set_str(text, 10) != 0 || v < 0) {
    throw ConfigError(std::string("curve parameters: field '") + key + "' is not a decimal integer");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Curve parameter files

CurveParams curve_params_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("curve parameters: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("curve parameters: expected a JSON object");
  CurveParams c;
  c.name = j.value("name", std::string("custom"));
  c.p = parse_decimal_field(j, "p");
  c.a = parse_decimal_field(j, "a");
  c.b = parse_decimal_field(j, "b");
  c.gx = parse_decimal_field(j, "gx");
  c.gy = parse_decimal_field(j, "gy");
  c.q = parse_decimal_field(j, "q");
  return c;
}

CurveParams load_curve_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open curve parameter file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return curve_params_from_json(ss.str());
}

std::string curve_params_to_json(const CurveParams& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["p"] = c.p.get_str();
  j["a"] = c.a.get_str();
  j["b"] = c.b.get_str();
  j["gx"] = c.gx.get_str();
  j["gy"] = c.gy.get_str();
  j["q"] = c.q.get_str();
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Descriptors

bool GroupDescriptor::operator==(const GroupDescriptor& rhs) const {
  return kind_ == rhs.kind_ && order_ == rhs.order_ && curve_ == rhs.curve_;
}

Group Group::elliptic(const CurveParams& c) {
  if (c.p < 5 || !is_probable_prime(c.p)) throw InvalidArgument("curve: p must be an odd prime");
  if (c.q < 2 || !is_probable_prime(c.q)) throw InvalidArgument("curve: order q must be prime");
  if (c.a < 0 || c.a >= c.p || c.b < 0 || c.b >= c.p) {
    throw InvalidArgument("curve: a and b must be reduced mod p");
  }
  if (mod_reduce(4 * c.a * c.a * c.a + 27 * c.b * c.b, c.p) == 0) {
    throw InvalidArgument("curve: singular (4a^3 + 27b^2 = 0)");
  }
  if (!on_curve(c, c.gx, c.gy)) throw InvalidArgument("curve: generator is not on the curve");
  mpz_class ox, oy;
  if (curve_mult(c, c.q, c.gx, c.gy, ox, oy)) {
    throw InvalidArgument("curve: generator order is not q");
  }
  auto d = std::shared_ptr<GroupDescriptor>(new GroupDescriptor());
  d->kind_ = GroupKind::EllipticCurve;
  d->order_ = c.q;
  d->curve_ = c;
  // Hasse: #E <= p + 1 + 2 sqrt(p). If 2q exceeds that bound the curve
  // cannot have a cofactor >= 2.
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), c.p.get_mpz_t());
  d->cofactor_one_ = 2 * c.q > c.p + 1 + 2 * (root + 1);
  return Group(std::move(d));
}

Group Group::default_elliptic() {
  static const Group g = elliptic(default_curve());
  return g;
}

Group Group::toy(const mpz_class& q) {
  if (q < 2 || !is_probable_prime(q)) throw InvalidArgument("toy group: order must be prime");
  if (mpz_sizeinbase(q.get_mpz_t(), 2) > kToyWidth * 8) {
    throw InvalidArgument("toy group: order must fit in 256 bits");
  }
  auto d = std::shared_ptr<GroupDescriptor>(new GroupDescriptor());
  d->kind_ = GroupKind::Toy;
  d->order_ = q;
  return Group(std::move(d));
}

bool Group::operator==(const Group& rhs) const {
  return desc_ == rhs.desc_ || *desc_ == *rhs.desc_;
}

GroupElement Group::identity() const { return GroupElement(*this); }

GroupElement Group::generator() const {
  if (kind() == GroupKind::Toy) return toy_element(1);
  const CurveParams& c = *desc_->curve();
  GroupElement e(*this);
  e.identity_ = false;
  e.x_ = c.gx;
  e.y_ = c.gy;
  return e;
}

GroupElement Group::toy_element(const mpz_class& log) const {
  if (kind() != GroupKind::Toy) throw GroupMismatch("toy_element on a curve group");
  GroupElement e(*this);
  e.x_ = mod_reduce(log, order());
  e.identity_ = e.x_ == 0;
  return e;
}

GroupElement Group::toy_element(std::int64_t log) const {
  return toy_element(mpz_class(static_cast<long>(log)));
}

GroupElement Group::point(const mpz_class& x, const mpz_class& y) const {
  if (kind() != GroupKind::EllipticCurve) throw GroupMismatch("point() on a toy group");
  const CurveParams& c = *desc_->curve();
  if (!on_curve(c, x, y)) throw DecodeError("point is not on the curve");
  if (!desc_->cofactor_is_one()) {
    mpz_class ox, oy;
    if (curve_mult(c, c.q, x, y, ox, oy)) throw DecodeError("point is not in the order-q subgroup");
  }
  GroupElement e(*this);
  e.identity_ = false;
  e.x_ = x;
  e.y_ = y;
  return e;
}

GroupElement Group::deserialize(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() == 1 && bytes[0] == kIdentityMarker) return identity();
  if (kind() == GroupKind::Toy) {
    if (bytes.size() != kToyWidth) throw DecodeError("toy element: expected 32 bytes");
    mpz_class v;
    // Little-endian.
    mpz_import(v.get_mpz_t(), bytes.size(), -1, 1, -1, 0, bytes.data());
    if (v >= order()) throw DecodeError("toy element out of range");
    if (v == 0) throw DecodeError("toy identity must use the marker encoding");
    return toy_element(v);
  }
  const std::size_t w = coord_width(desc_->curve()->p);
  if (bytes.size() != 1 + 2 * w || bytes[0] != kAffineTag) {
    throw DecodeError("curve point: bad length or tag");
  }
  const mpz_class x = decode_be(bytes.subspan(1, w));
  const mpz_class y = decode_be(bytes.subspan(1 + w, w));
  return point(x, y);
}

// ---------------------------------------------------------------------------
// Group law

mpz_class GroupElement::discrete_log() const {
  if (group_.kind() != GroupKind::Toy) throw GroupMismatch("discrete_log on a curve group");
  return identity_ ? mpz_class(0) : x_;
}

bool GroupElement::operator==(const GroupElement& rhs) const {
  if (!(group_ == rhs.group_)) return false;
  if (identity_ || rhs.identity_) return identity_ == rhs.identity_;
  return x_ == rhs.x_ && y_ == rhs.y_;
}

GroupElement GroupElement::operator-() const {
  if (identity_) return *this;
  GroupElement r = *this;
  if (group_.kind() == GroupKind::Toy) {
    r.x_ = group_.order() - x_;
  } else {
    r.y_ = mod_reduce(-y_, group_.descriptor().curve()->p);
    // y = 0 is its own negation; mod_reduce already handles that.
  }
  return r;
}

GroupElement GroupElement::operator+(const GroupElement& rhs) const {
  if (!(group_ == rhs.group_)) throw GroupMismatch("point_add: elements from different groups");
  if (identity_) return rhs;
  if (rhs.identity_) return *this;
  if (group_.kind() == GroupKind::Toy) return group_.toy_element(mpz_class(x_ + rhs.x_));

  const CurveParams& c = *group_.descriptor().curve();
  mpz_class lambda;
  if (x_ == rhs.x_) {
    if (mod_reduce(y_ + rhs.y_, c.p) == 0) return group_.identity();
    mpz_class num = 3 * x_ * x_ + c.a;
    mpz_class den = 2 * y_;
    mpz_invert(den.get_mpz_t(), den.get_mpz_t(), c.p.get_mpz_t());
    lambda = mod_reduce(num * den, c.p);
  } else {
    mpz_class num = rhs.y_ - y_;
    mpz_class den = mod_reduce(rhs.x_ - x_, c.p);
    mpz_invert(den.get_mpz_t(), den.get_mpz_t(), c.p.get_mpz_t());
    lambda = mod_reduce(num * den, c.p);
  }
  GroupElement r(group_);
  r.identity_ = false;
  r.x_ = mod_reduce(lambda * lambda - x_ - rhs.x_, c.p);
  r.y_ = mod_reduce(lambda * (x_ - r.x_) - y_, c.p);
  return r;
}

GroupElement point_add(const GroupElement& a, const GroupElement& b) { return a + b; }

GroupElement scalar_mult(const Scalar& s, const GroupElement& p) {
  const Group& g = p.group();
  if (s.modulus() != g.order()) throw GroupMismatch("scalar_mult: scalar field differs from group order");
  if (s.is_zero() || p.is_identity()) return g.identity();
  if (g.kind() == GroupKind::Toy) return g.toy_element(mpz_class(s.value() * p.x()));
  GroupElement r(g);
  r.identity_ = !curve_mult(*g.descriptor().curve(), s.value(), p.x(), p.y(), r.x_, r.y_);
  return r;
}

Bytes serialize(const GroupElement& e) {
  if (e.is_identity()) return Bytes{kIdentityMarker};
  if (e.group().kind() == GroupKind::Toy) {
    Bytes out(kToyWidth, 0);
    std::size_t count = 0;
    mpz_export(out.data(), &count, -1, 1, -1, 0, e.x().get_mpz_t());
    return out;
  }
  const std::size_t w = coord_width(e.group().descriptor().curve()->p);
  Bytes out;
  out.reserve(1 + 2 * w);
  out.push_back(kAffineTag);
  const Bytes x = encode_be(e.x(), w);
  const Bytes y = encode_be(e.y(), w);
  out.insert(out.end(), x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace swarmauth::algebra
