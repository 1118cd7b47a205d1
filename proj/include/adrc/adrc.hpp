/*
Copyright 2026 The ADRC Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef ADRC_ADRC_HPP
#define ADRC_ADRC_HPP

#include "adrc/ambisonic.hpp"
#include "adrc/bands.hpp"
#include "adrc/bits.hpp"
#include "adrc/bitstream.hpp"
#include "adrc/codec.hpp"
#include "adrc/common.hpp"
#include "adrc/config.hpp"
#include "adrc/decorrelator.hpp"
#include "adrc/dirac.hpp"
#include "adrc/direction.hpp"
#include "adrc/eval.hpp"
#include "adrc/filterbank.hpp"
#include "adrc/param_coder.hpp"
#include "adrc/param_quant.hpp"
#include "adrc/sh.hpp"
#include "adrc/synthesis.hpp"
#include "adrc/transport.hpp"
#include "adrc/wav.hpp"

#endif  // ADRC_ADRC_HPP
