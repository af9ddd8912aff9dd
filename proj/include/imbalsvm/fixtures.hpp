#ifndef IMBALSVM_FIXTURES_HPP_
#define IMBALSVM_FIXTURES_HPP_
#pragma once

// Reference per-dataset averages of nine methods on fifteen imbalanced datasets, one table per
// metric. The same rows ship as CSV under data/fixtures/.

#include "imbalsvm/errors.hpp"
#include "imbalsvm/stat_tests.hpp"

#include <sstream>      // std::istringstream
#include <string>       // std::string
#include <string_view>  // std::string_view

namespace imbalsvm::fixtures {

inline constexpr std::string_view gmean_csv = R"csv(
dataset,algorithm,metric,value
Aut,SVM,gmean,59.87
Aut,Static-SMOTE,gmean,63.61
Aut,Cost-SVM,gmean,59.98
Aut,SDC,gmean,62.83
Aut,WK-SMOTE,gmean,57.70
Aut,PPSVM,gmean,52.78
Aut,NBSVM,gmean,51.05
Aut,i-SVM-DE-MAX,gmean,70.34
Aut,i-SVM-DE-AVE,gmean,65.43
Bal,SVM,gmean,96.59
Bal,Static-SMOTE,gmean,92.18
Bal,Cost-SVM,gmean,97.27
Bal,SDC,gmean,96.54
Bal,WK-SMOTE,gmean,87.18
Bal,PPSVM,gmean,96.93
Bal,NBSVM,gmean,92.45
Bal,i-SVM-DE-MAX,gmean,97.25
Bal,i-SVM-DE-AVE,gmean,97.41
Car,SVM,gmean,97.78
Car,Static-SMOTE,gmean,98.20
Car,Cost-SVM,gmean,98.20
Car,SDC,gmean,98.27
Car,WK-SMOTE,gmean,96.56
Car,PPSVM,gmean,97.29
Car,NBSVM,gmean,0.00
Car,i-SVM-DE-MAX,gmean,98.30
Car,i-SVM-DE-AVE,gmean,98.24
Cle,SVM,gmean,0.00
Cle,Static-SMOTE,gmean,1.71
Cle,Cost-SVM,gmean,7.96
Cle,SDC,gmean,8.89
Cle,WK-SMOTE,gmean,8.38
Cle,PPSVM,gmean,6.00
Cle,NBSVM,gmean,1.01
Cle,i-SVM-DE-MAX,gmean,12.65
Cle,i-SVM-DE-AVE,gmean,14.13
Der,SVM,gmean,96.50
Der,Static-SMOTE,gmean,96.51
Der,Cost-SVM,gmean,96.19
Der,SDC,gmean,96.58
Der,WK-SMOTE,gmean,95.62
Der,PPSVM,gmean,96.54
Der,NBSVM,gmean,97.03
Der,i-SVM-DE-MAX,gmean,95.03
Der,i-SVM-DE-AVE,gmean,94.93
Eco,SVM,gmean,49.89
Eco,Static-SMOTE,gmean,49.09
Eco,Cost-SVM,gmean,48.75
Eco,SDC,gmean,45.55
Eco,WK-SMOTE,gmean,40.27
Eco,PPSVM,gmean,48.45
Eco,NBSVM,gmean,45.22
Eco,i-SVM-DE-MAX,gmean,46.99
Eco,i-SVM-DE-AVE,gmean,47.32
Fla,SVM,gmean,35.64
Fla,Static-SMOTE,gmean,48.28
Fla,Cost-SVM,gmean,54.44
Fla,SDC,gmean,56.28
Fla,WK-SMOTE,gmean,47.26
Fla,PPSVM,gmean,32.08
Fla,NBSVM,gmean,42.31
Fla,i-SVM-DE-MAX,gmean,44.11
Fla,i-SVM-DE-AVE,gmean,37.44
Gla,SVM,gmean,51.88
Gla,Static-SMOTE,gmean,47.54
Gla,Cost-SVM,gmean,58.30
Gla,SDC,gmean,62.58
Gla,WK-SMOTE,gmean,61.58
Gla,PPSVM,gmean,35.10
Gla,NBSVM,gmean,43.61
Gla,i-SVM-DE-MAX,gmean,51.70
Gla,i-SVM-DE-AVE,gmean,57.79
Hay,SVM,gmean,80.14
Hay,Static-SMOTE,gmean,80.35
Hay,Cost-SVM,gmean,81.74
Hay,SDC,gmean,82.29
Hay,WK-SMOTE,gmean,81.70
Hay,PPSVM,gmean,75.16
Hay,NBSVM,gmean,79.44
Hay,i-SVM-DE-MAX,gmean,81.20
Hay,i-SVM-DE-AVE,gmean,82.29
Hcv,SVM,gmean,35.33
Hcv,Static-SMOTE,gmean,38.53
Hcv,Cost-SVM,gmean,39.57
Hcv,SDC,gmean,35.69
Hcv,WK-SMOTE,gmean,31.73
Hcv,PPSVM,gmean,24.53
Hcv,NBSVM,gmean,20.64
Hcv,i-SVM-DE-MAX,gmean,41.88
Hcv,i-SVM-DE-AVE,gmean,39.77
Lym,SVM,gmean,66.03
Lym,Static-SMOTE,gmean,59.69
Lym,Cost-SVM,gmean,76.76
Lym,SDC,gmean,74.10
Lym,WK-SMOTE,gmean,62.92
Lym,PPSVM,gmean,64.35
Lym,NBSVM,gmean,55.72
Lym,i-SVM-DE-MAX,gmean,62.16
Lym,i-SVM-DE-AVE,gmean,62.22
New,SVM,gmean,93.66
New,Static-SMOTE,gmean,95.31
New,Cost-SVM,gmean,97.13
New,SDC,gmean,96.48
New,WK-SMOTE,gmean,96.66
New,PPSVM,gmean,93.00
New,NBSVM,gmean,86.73
New,i-SVM-DE-MAX,gmean,94.98
New,i-SVM-DE-AVE,gmean,94.81
Shu,SVM,gmean,54.77
Shu,Static-SMOTE,gmean,55.28
Shu,Cost-SVM,gmean,51.01
Shu,SDC,gmean,54.98
Shu,WK-SMOTE,gmean,55.05
Shu,PPSVM,gmean,48.88
Shu,NBSVM,gmean,6.85
Shu,i-SVM-DE-MAX,gmean,54.31
Shu,i-SVM-DE-AVE,gmean,49.80
Thy,SVM,gmean,68.31
Thy,Static-SMOTE,gmean,71.32
Thy,Cost-SVM,gmean,84.45
Thy,SDC,gmean,83.55
Thy,WK-SMOTE,gmean,85.00
Thy,PPSVM,gmean,31.06
Thy,NBSVM,gmean,21.42
Thy,i-SVM-DE-MAX,gmean,80.05
Thy,i-SVM-DE-AVE,gmean,81.12
Zoo,SVM,gmean,49.68
Zoo,Static-SMOTE,gmean,54.06
Zoo,Cost-SVM,gmean,50.06
Zoo,SDC,gmean,53.74
Zoo,WK-SMOTE,gmean,49.17
Zoo,PPSVM,gmean,57.24
Zoo,NBSVM,gmean,53.30
Zoo,i-SVM-DE-MAX,gmean,63.62
Zoo,i-SVM-DE-AVE,gmean,59.19
)csv";

inline constexpr std::string_view avf_csv = R"csv(
dataset,algorithm,metric,value
Aut,SVM,avf,71.82
Aut,Static-SMOTE,avf,73.08
Aut,Cost-SVM,avf,68.46
Aut,SDC,avf,72.55
Aut,WK-SMOTE,avf,66.45
Aut,PPSVM,avf,69.24
Aut,NBSVM,avf,69.87
Aut,i-SVM-DE-MAX,avf,76.51
Aut,i-SVM-DE-AVE,avf,74.58
Bal,SVM,avf,94.80
Bal,Static-SMOTE,avf,89.56
Bal,Cost-SVM,avf,95.16
Bal,SDC,avf,94.29
Bal,WK-SMOTE,avf,83.10
Bal,PPSVM,avf,95.77
Bal,NBSVM,avf,87.87
Bal,i-SVM-DE-MAX,avf,96.60
Bal,i-SVM-DE-AVE,avf,96.75
Car,SVM,avf,97.04
Car,Static-SMOTE,avf,96.98
Car,Cost-SVM,avf,97.07
Car,SDC,avf,97.21
Car,WK-SMOTE,avf,96.40
Car,PPSVM,avf,97.47
Car,NBSVM,avf,28.89
Car,i-SVM-DE-MAX,avf,96.67
Car,i-SVM-DE-AVE,avf,96.66
Cle,SVM,avf,27.22
Cle,Static-SMOTE,avf,29.12
Cle,Cost-SVM,avf,28.61
Cle,SDC,avf,29.05
Cle,WK-SMOTE,avf,29.31
Cle,PPSVM,avf,28.08
Cle,NBSVM,avf,13.21
Cle,i-SVM-DE-MAX,avf,31.86
Cle,i-SVM-DE-AVE,avf,31.86
Der,SVM,avf,96.91
Der,Static-SMOTE,avf,96.90
Der,Cost-SVM,avf,96.34
Der,SDC,avf,96.81
Der,WK-SMOTE,avf,95.78
Der,PPSVM,avf,96.93
Der,NBSVM,avf,97.32
Der,i-SVM-DE-MAX,avf,95.42
Der,i-SVM-DE-AVE,avf,95.31
Eco,SVM,avf,74.73
Eco,Static-SMOTE,avf,70.93
Eco,Cost-SVM,avf,69.82
Eco,SDC,avf,63.67
Eco,WK-SMOTE,avf,58.90
Eco,PPSVM,avf,75.29
Eco,NBSVM,avf,68.61
Eco,i-SVM-DE-MAX,avf,68.52
Eco,i-SVM-DE-AVE,avf,69.54
Fla,SVM,avf,60.35
Fla,Static-SMOTE,avf,61.22
Fla,Cost-SVM,avf,59.96
Fla,SDC,avf,61.05
Fla,WK-SMOTE,avf,57.53
Fla,PPSVM,avf,56.83
Fla,NBSVM,avf,59.76
Fla,i-SVM-DE-MAX,avf,60.20
Fla,i-SVM-DE-AVE,avf,59.21
Gla,SVM,avf,65.38
Gla,Static-SMOTE,avf,65.23
Gla,Cost-SVM,avf,64.12
Gla,SDC,avf,66.82
Gla,WK-SMOTE,avf,65.88
Gla,PPSVM,avf,60.11
Gla,NBSVM,avf,65.75
Gla,i-SVM-DE-MAX,avf,66.46
Gla,i-SVM-DE-AVE,avf,67.85
Hay,SVM,avf,81.75
Hay,Static-SMOTE,avf,81.30
Hay,Cost-SVM,avf,82.80
Hay,SDC,avf,83.31
Hay,WK-SMOTE,avf,82.55
Hay,PPSVM,avf,77.22
Hay,NBSVM,avf,81.56
Hay,i-SVM-DE-MAX,avf,81.92
Hay,i-SVM-DE-AVE,avf,83.13
Hcv,SVM,avf,66.05
Hcv,Static-SMOTE,avf,67.69
Hcv,Cost-SVM,avf,66.47
Hcv,SDC,avf,66.18
Hcv,WK-SMOTE,avf,59.28
Hcv,PPSVM,avf,61.17
Hcv,NBSVM,avf,18.09
Hcv,i-SVM-DE-MAX,avf,67.14
Hcv,i-SVM-DE-AVE,avf,67.10
Lym,SVM,avf,80.67
Lym,Static-SMOTE,avf,77.39
Lym,Cost-SVM,avf,79.73
Lym,SDC,avf,81.37
Lym,WK-SMOTE,avf,69.98
Lym,PPSVM,avf,79.85
Lym,NBSVM,avf,42.42
Lym,i-SVM-DE-MAX,avf,78.08
Lym,i-SVM-DE-AVE,avf,79.16
New,SVM,avf,94.50
New,Static-SMOTE,avf,95.48
New,Cost-SVM,avf,95.64
New,SDC,avf,95.50
New,WK-SMOTE,avf,94.43
New,PPSVM,avf,94.04
New,NBSVM,avf,85.46
New,i-SVM-DE-MAX,avf,95.14
New,i-SVM-DE-AVE,avf,95.12
Shu,SVM,avf,87.87
Shu,Static-SMOTE,avf,88.98
Shu,Cost-SVM,avf,83.32
Shu,SDC,avf,83.77
Shu,WK-SMOTE,avf,68.01
Shu,PPSVM,avf,82.57
Shu,NBSVM,avf,32.16
Shu,i-SVM-DE-MAX,avf,84.02
Shu,i-SVM-DE-AVE,avf,83.08
Thy,SVM,avf,76.60
Thy,Static-SMOTE,avf,78.29
Thy,Cost-SVM,avf,79.23
Thy,SDC,avf,79.07
Thy,WK-SMOTE,avf,77.62
Thy,PPSVM,avf,45.24
Thy,NBSVM,avf,14.78
Thy,i-SVM-DE-MAX,avf,82.19
Thy,i-SVM-DE-AVE,avf,83.23
Zoo,SVM,avf,87.52
Zoo,Static-SMOTE,avf,89.16
Zoo,Cost-SVM,avf,87.82
Zoo,SDC,avf,88.41
Zoo,WK-SMOTE,avf,86.27
Zoo,PPSVM,avf,89.42
Zoo,NBSVM,avf,87.73
Zoo,i-SVM-DE-MAX,avf,91.23
Zoo,i-SVM-DE-AVE,avf,90.95
)csv";

inline constexpr std::string_view cba_csv = R"csv(
dataset,algorithm,metric,value
Aut,SVM,cba,65.08
Aut,Static-SMOTE,cba,66.33
Aut,Cost-SVM,cba,61.59
Aut,SDC,cba,66.74
Aut,WK-SMOTE,cba,60.18
Aut,PPSVM,cba,62.80
Aut,NBSVM,cba,63.07
Aut,i-SVM-DE-MAX,cba,69.73
Aut,i-SVM-DE-AVE,cba,68.33
Bal,SVM,cba,92.52
Bal,Static-SMOTE,cba,85.84
Bal,Cost-SVM,cba,92.44
Bal,SDC,cba,91.08
Bal,WK-SMOTE,cba,77.58
Bal,PPSVM,cba,94.16
Bal,NBSVM,cba,82.59
Bal,i-SVM-DE-MAX,cba,94.88
Bal,i-SVM-DE-AVE,cba,95.04
Car,SVM,cba,95.19
Car,Static-SMOTE,cba,95.18
Car,Cost-SVM,cba,95.05
Car,SDC,cba,95.23
Car,WK-SMOTE,cba,94.54
Car,PPSVM,cba,95.77
Car,NBSVM,cba,18.52
Car,i-SVM-DE-MAX,cba,94.39
Car,i-SVM-DE-AVE,cba,94.36
Cle,SVM,cba,25.04
Cle,Static-SMOTE,cba,26.52
Cle,Cost-SVM,cba,24.79
Cle,SDC,cba,24.69
Cle,WK-SMOTE,cba,24.40
Cle,PPSVM,cba,24.78
Cle,NBSVM,cba,10.16
Cle,i-SVM-DE-MAX,cba,29.05
Cle,i-SVM-DE-AVE,cba,29.05
Der,SVM,cba,95.43
Der,Static-SMOTE,cba,95.50
Der,Cost-SVM,cba,95.43
Der,SDC,cba,96.13
Der,WK-SMOTE,cba,93.77
Der,PPSVM,cba,95.34
Der,NBSVM,cba,95.91
Der,i-SVM-DE-MAX,cba,94.27
Der,i-SVM-DE-AVE,cba,93.99
Eco,SVM,cba,70.28
Eco,Static-SMOTE,cba,66.70
Eco,Cost-SVM,cba,64.58
Eco,SDC,cba,58.45
Eco,WK-SMOTE,cba,52.93
Eco,PPSVM,cba,70.30
Eco,NBSVM,cba,64.81
Eco,i-SVM-DE-MAX,cba,63.34
Eco,i-SVM-DE-AVE,cba,64.66
Fla,SVM,cba,56.85
Fla,Static-SMOTE,cba,56.72
Fla,Cost-SVM,cba,54.60
Fla,SDC,cba,56.06
Fla,WK-SMOTE,cba,51.95
Fla,PPSVM,cba,53.05
Fla,NBSVM,cba,54.41
Fla,i-SVM-DE-MAX,cba,54.68
Fla,i-SVM-DE-AVE,cba,54.31
Gla,SVM,cba,60.28
Gla,Static-SMOTE,cba,58.30
Gla,Cost-SVM,cba,55.87
Gla,SDC,cba,59.51
Gla,WK-SMOTE,cba,58.37
Gla,PPSVM,cba,53.71
Gla,NBSVM,cba,58.69
Gla,i-SVM-DE-MAX,cba,60.68
Gla,i-SVM-DE-AVE,cba,61.45
Hay,SVM,cba,75.60
Hay,Static-SMOTE,cba,76.87
Hay,Cost-SVM,cba,77.03
Hay,SDC,cba,75.60
Hay,WK-SMOTE,cba,75.07
Hay,PPSVM,cba,72.54
Hay,NBSVM,cba,73.47
Hay,i-SVM-DE-MAX,cba,76.98
Hay,i-SVM-DE-AVE,cba,77.77
Hcv,SVM,cba,61.08
Hcv,Static-SMOTE,cba,62.77
Hcv,Cost-SVM,cba,61.53
Hcv,SDC,cba,60.44
Hcv,WK-SMOTE,cba,53.37
Hcv,PPSVM,cba,57.29
Hcv,NBSVM,cba,12.33
Hcv,i-SVM-DE-MAX,cba,61.58
Hcv,i-SVM-DE-AVE,cba,61.48
Lym,SVM,cba,77.30
Lym,Static-SMOTE,cba,74.48
Lym,Cost-SVM,cba,75.01
Lym,SDC,cba,77.33
Lym,WK-SMOTE,cba,65.06
Lym,PPSVM,cba,79.96
Lym,NBSVM,cba,35.33
Lym,i-SVM-DE-MAX,cba,74.61
Lym,i-SVM-DE-AVE,cba,75.53
New,SVM,cba,90.59
New,Static-SMOTE,cba,92.30
New,Cost-SVM,cba,92.19
New,SDC,cba,91.99
New,WK-SMOTE,cba,90.24
New,PPSVM,cba,91.09
New,NBSVM,cba,79.40
New,i-SVM-DE-MAX,cba,91.94
New,i-SVM-DE-AVE,cba,91.96
Shu,SVM,cba,86.85
Shu,Static-SMOTE,cba,88.50
Shu,Cost-SVM,cba,81.55
Shu,SDC,cba,81.64
Shu,WK-SMOTE,cba,65.05
Shu,PPSVM,cba,80.87
Shu,NBSVM,cba,27.77
Shu,i-SVM-DE-MAX,cba,82.06
Shu,i-SVM-DE-AVE,cba,81.25
Thy,SVM,cba,69.75
Thy,Static-SMOTE,cba,72.00
Thy,Cost-SVM,cba,71.16
Thy,SDC,cba,70.92
Thy,WK-SMOTE,cba,70.19
Thy,PPSVM,cba,38.20
Thy,NBSVM,cba,8.89
Thy,i-SVM-DE-MAX,cba,77.52
Thy,i-SVM-DE-AVE,cba,78.42
Zoo,SVM,cba,84.71
Zoo,Static-SMOTE,cba,87.07
Zoo,Cost-SVM,cba,85.48
Zoo,SDC,cba,86.09
Zoo,WK-SMOTE,cba,83.39
Zoo,PPSVM,cba,86.94
Zoo,NBSVM,cba,85.41
Zoo,i-SVM-DE-MAX,cba,90.27
Zoo,i-SVM-DE-AVE,cba,89.60
)csv";

/// "gmean", "avf" or "cba".
[[nodiscard]] inline results_table load(const std::string &name) {
    std::string_view csv;
    std::string metric;
    if (name == "gmean") {
        csv = gmean_csv;
        metric = "gmean";
    } else if (name == "avf") {
        csv = avf_csv;
        metric = "avf";
    } else if (name == "cba") {
        csv = cba_csv;
        metric = "cba";
    } else {
        throw config_error{ "unknown fixture '" + name + "'; valid names: gmean, avf, cba" };
    }
    std::istringstream in{ std::string{ csv } };
    return parse_results_csv(in).at(metric);
}

}  // namespace imbalsvm::fixtures

#endif  // IMBALSVM_FIXTURES_HPP_
