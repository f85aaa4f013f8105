#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prevplot {

/// Base class for every domain error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidProbability : public Error {
public:
    using Error::Error;
};

// Confusion-matrix summaries need at least one sample in the relevant class.
class NoDiseasedSamples : public Error {
public:
    NoDiseasedSamples() : Error("no diseased samples: tp + fn == 0") {}
};

class NoHealthySamples : public Error {
public:
    NoHealthySamples() : Error("no healthy samples: fp + tn == 0") {}
};

class NoPositiveTests : public Error {
public:
    NoPositiveTests() : Error("no positive tests possible: PPV is undefined here") {}
};

class NoNegativeTests : public Error {
public:
    NoNegativeTests() : Error("no negative tests possible: NPV is undefined here") {}
};

class NoDetectableCases : public Error {
public:
    NoDetectableCases() : Error("sensitivity * prevalence == 0: the test never detects a case") {}
};

/// A test with sensitivity 0 and specificity 1 never fires; it has no breakeven prevalence.
class DegenerateTest : public Error {
public:
    DegenerateTest() : Error("degenerate test: sensitivity 0 with specificity 1") {}
};

class NoTrials : public Error {
public:
    NoTrials() : Error("confidence interval requires trials > 0") {}
};

class InvalidInterval : public Error {
public:
    using Error::Error;
};

class InvalidCharacteristics : public Error {
public:
    using Error::Error;
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

class InvalidCostWeights : public Error {
public:
    using Error::Error;
};

class OneClassOnly : public Error {
public:
    OneClassOnly() : Error("need at least one diseased and one healthy sample") {}
};

class TooFewSamples : public Error {
public:
    TooFewSamples() : Error("need at least 2 samples per class") {}
};

class EmptyCurve : public Error {
public:
    EmptyCurve() : Error("curve has fewer than 2 points") {}
};

class InvalidPlotOptions : public Error {
public:
    using Error::Error;
};

/// CSV ingestion errors. Row numbers are 1-based physical line numbers,
/// counting the header line when one is present.
class CsvError : public Error {
public:
    using Error::Error;
};

class MissingColumn : public CsvError {
public:
    using CsvError::CsvError;
};

class MalformedRow : public CsvError {
public:
    MalformedRow(std::size_t row, const std::string& reason)
        : CsvError("row " + std::to_string(row) + ": " + reason), row_(row) {}

    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class NonNumericScore : public MalformedRow {
public:
    NonNumericScore(std::size_t row, const std::string& text)
        : MalformedRow(row, "non-numeric score '" + text + "'") {}
};

}  // namespace prevplot
