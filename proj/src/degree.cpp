#include "ghk/degree.hpp"

#include <limits>

#include "ghk/error.hpp"

namespace ghk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDocument: return "InvalidDocument";
    case ErrorKind::IncompleteTable: return "IncompleteTable";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadIdentity: return "BadIdentity";
    case ErrorKind::BadInverse: return "BadInverse";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::ZeroOnNonInvertible: return "ZeroOnNonInvertible";
    case ErrorKind::NonZeroOnInvertible: return "NonZeroOnInvertible";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::TruncationMismatch: return "TruncationMismatch";
    case ErrorKind::IdealCosetMismatch: return "IdealCosetMismatch";
    case ErrorKind::LemmaViolation: return "LemmaViolation";
    case ErrorKind::InvertibleInput: return "InvertibleInput";
    case ErrorKind::WrongRank: return "WrongRank";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::CubeFailure: return "CubeFailure";
    case ErrorKind::BadSplit: return "BadSplit";
    case ErrorKind::AxiomFailure: return "AxiomFailure";
    case ErrorKind::SquareIncompatible: return "SquareIncompatible";
    case ErrorKind::ColorChanged: return "ColorChanged";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NonUniqueRepresentation: return "NonUniqueRepresentation";
    case ErrorKind::NotFailing: return "NotFailing";
  }
  return "Unknown";
}

Degree Degree::unit(std::size_t k, std::size_t i) {
  Degree d = zero(k);
  d.c_.at(i) = 1;
  return d;
}

Degree Degree::uniform(std::size_t k, value_type v) {
  return Degree(std::vector<value_type>(k, v));
}

bool Degree::is_zero() const noexcept {
  for (auto v : c_) {
    if (v != 0) return false;
  }
  return true;
}

std::uint64_t Degree::total() const noexcept {
  std::uint64_t t = 0;
  for (auto v : c_) t += v;
  return t;
}

int Degree::unit_index() const noexcept {
  int index = -1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (c_[i] != 1 || index != -1) return -1;
    index = static_cast<int>(i);
  }
  return index;
}

bool Degree::leq(Degree const& other) const {
  if (rank() != other.rank()) {
    throw Error(ErrorKind::InvalidDocument,
                "degree rank mismatch " + to_string() + " vs " +
                    other.to_string());
  }
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] > other.c_[i]) return false;
  }
  return true;
}

Degree Degree::operator+(Degree const& other) const {
  Degree result = *this;
  result += other;
  return result;
}

Degree& Degree::operator+=(Degree const& other) {
  if (rank() != other.rank()) {
    throw Error(ErrorKind::InvalidDocument,
                "degree rank mismatch " + to_string() + " vs " +
                    other.to_string());
  }
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] > std::numeric_limits<value_type>::max() - other.c_[i]) {
      throw Error(ErrorKind::DegreeOverflow,
                  to_string() + " + " + other.to_string());
    }
    c_[i] += other.c_[i];
  }
  return *this;
}

Degree Degree::operator-(Degree const& other) const {
  if (!other.leq(*this)) {
    throw Error(ErrorKind::BadSplit,
                other.to_string() + " is not below " + to_string());
  }
  Degree result = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) result.c_[i] -= other.c_[i];
  return result;
}

std::string Degree::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

std::vector<Degree> degrees_below(Degree const& bound) {
  std::vector<Degree> out;
  Degree cur = Degree::zero(bound.rank());
  while (true) {
    out.push_back(cur);
    // odometer, last component fastest
    std::size_t i = bound.rank();
    while (i > 0) {
      --i;
      if (cur[i] < bound[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < bound.rank(); ++j) cur[j] = 0;
        break;
      }
      if (i == 0) return out;
    }
    if (bound.rank() == 0) return out;
  }
}

}  // namespace ghk
