// Copyright 2026 The morphotrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "morphotrans/corpus.hpp"
#include "morphotrans/errors.hpp"
#include "morphotrans/evaluator.hpp"
#include "morphotrans/generator.hpp"
#include "morphotrans/ltr.hpp"
#include "morphotrans/metrics.hpp"
#include "morphotrans/morpheme.hpp"
#include "morphotrans/pipeline.hpp"
#include "morphotrans/porter.hpp"
#include "morphotrans/ranker.hpp"
#include "morphotrans/records.hpp"
#include "morphotrans/resources.hpp"
#include "morphotrans/segmenter.hpp"
#include "morphotrans/text.hpp"
