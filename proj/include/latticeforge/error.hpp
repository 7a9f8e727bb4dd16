#pragma once

#include <stdexcept>
#include <string>

namespace latticeforge {

enum class Errc {
  NotPrime,
  NotOddPrime,
  TableTooLarge,
  NotGenerator,
  ZeroPlace,
  SameNormClass,
  UnknownLetter,
  CardinalityMismatch,
  NoSolution,
  MultipleSolutions,
  MalformedWord,
  MalformedInput,
  DimensionMismatch,
  IndexOutOfRange,
  OddSize,
  LinkFailure,
  RamifiedPlace,
  PlaceInS,
  Reducible,
  BadPlace,
  NonInvertibleImage,
  Unsupported,
  UnknownDirection,
  NonSymmetric,
  TooLarge,
  RelationFailed,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotOddPrime: return "NotOddPrime";
    case Errc::TableTooLarge: return "TableTooLarge";
    case Errc::NotGenerator: return "NotGenerator";
    case Errc::ZeroPlace: return "ZeroPlace";
    case Errc::SameNormClass: return "SameNormClass";
    case Errc::UnknownLetter: return "UnknownLetter";
    case Errc::CardinalityMismatch: return "CardinalityMismatch";
    case Errc::NoSolution: return "NoSolution";
    case Errc::MultipleSolutions: return "MultipleSolutions";
    case Errc::MalformedWord: return "MalformedWord";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::OddSize: return "OddSize";
    case Errc::LinkFailure: return "LinkFailure";
    case Errc::RamifiedPlace: return "RamifiedPlace";
    case Errc::PlaceInS: return "PlaceInS";
    case Errc::Reducible: return "Reducible";
    case Errc::BadPlace: return "BadPlace";
    case Errc::NonInvertibleImage: return "NonInvertibleImage";
    case Errc::Unsupported: return "Unsupported";
    case Errc::UnknownDirection: return "UnknownDirection";
    case Errc::NonSymmetric: return "NonSymmetric";
    case Errc::TooLarge: return "TooLarge";
    case Errc::RelationFailed: return "RelationFailed";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace latticeforge
