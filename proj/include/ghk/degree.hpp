#ifndef GHK_DEGREE_HPP_
#define GHK_DEGREE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ghk {

// An element of N^k. Addition is overflow-checked and throws
// Error(DegreeOverflow) instead of wrapping.
class Degree {
 public:
  using value_type = std::uint32_t;

  Degree() = default;
  Degree(std::initializer_list<value_type> components) : c_(components) {}
  explicit Degree(std::vector<value_type> components)
      : c_(std::move(components)) {}

  static Degree zero(std::size_t k) {
    return Degree(std::vector<value_type>(k, 0));
  }
  // e_i, 0-based.
  static Degree unit(std::size_t k, std::size_t i);
  // (v, v, ..., v)
  static Degree uniform(std::size_t k, value_type v);

  std::size_t rank() const noexcept { return c_.size(); }
  value_type operator[](std::size_t i) const { return c_[i]; }
  value_type& operator[](std::size_t i) { return c_[i]; }
  std::vector<value_type> const& components() const noexcept { return c_; }

  bool is_zero() const noexcept;
  // Sum of components.
  std::uint64_t total() const noexcept;
  // Index i when this is e_i, otherwise -1.
  int unit_index() const noexcept;

  // Componentwise order m <= n.
  bool leq(Degree const& other) const;

  Degree operator+(Degree const& other) const;
  Degree& operator+=(Degree const& other);
  // Requires other.leq(*this).
  Degree operator-(Degree const& other) const;

  friend bool operator==(Degree const&, Degree const&) = default;
  friend auto operator<=>(Degree const&, Degree const&) = default;

  std::string to_string() const;

 private:
  std::vector<value_type> c_;
};

// All m with m <= bound, in lexicographic order.
std::vector<Degree> degrees_below(Degree const& bound);

}  // namespace ghk

#endif  // GHK_DEGREE_HPP_
