/**
 * Copyright 2026 The multinet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace multinet {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (edge lists, corpora, embedding files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Inputs that parse but violate a precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// A walk was asked to start from a node with no edges in its start layer.
class InvalidStart : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Training produced a non-finite value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace multinet
