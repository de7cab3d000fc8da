#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graftlab {

enum class Errc {
  ParabolicOrIdentity,
  DegenerateGeodesic,
  Disjoint,
  Equal,
  DegenerateTriangle,
  OpenBoundary,
  InvalidParams,
  NotLoxodromic,
  EmptyLoopSet,
  DepthTooLarge,
  CrossingDetected,
  EndpointOnLeaf,
  DimensionMismatch,
  NotCarried,
  NoEmbedding,
  PointOnLeaf,
  InsufficientDepth,
  ConcurrentLeaves,
  TooFewSamples,
  NotAdmissible,
  UnsupportedConfiguration,
  SupportMismatch,
  NonIntegralResidual,
  ParameterOutOfRange,
  InvalidTrack,
  ConfigError,
  UnknownRecipe,
  IOError,
  ParseError,
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::ParabolicOrIdentity: return "ParabolicOrIdentity";
    case Errc::DegenerateGeodesic: return "DegenerateGeodesic";
    case Errc::Disjoint: return "Disjoint";
    case Errc::Equal: return "Equal";
    case Errc::DegenerateTriangle: return "DegenerateTriangle";
    case Errc::OpenBoundary: return "OpenBoundary";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::NotLoxodromic: return "NotLoxodromic";
    case Errc::EmptyLoopSet: return "EmptyLoopSet";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::CrossingDetected: return "CrossingDetected";
    case Errc::EndpointOnLeaf: return "EndpointOnLeaf";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotCarried: return "NotCarried";
    case Errc::NoEmbedding: return "NoEmbedding";
    case Errc::PointOnLeaf: return "PointOnLeaf";
    case Errc::InsufficientDepth: return "InsufficientDepth";
    case Errc::ConcurrentLeaves: return "ConcurrentLeaves";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::UnsupportedConfiguration: return "UnsupportedConfiguration";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::NonIntegralResidual: return "NonIntegralResidual";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::InvalidTrack: return "InvalidTrack";
    case Errc::ConfigError: return "ConfigError";
    case Errc::UnknownRecipe: return "UnknownRecipe";
    case Errc::IOError: return "IOError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code;
/// callers branch on code(), the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace graftlab
