// Taylor coefficients (degree 28) of
// cos(2 pi (p^2 - p - 1/16))/cos(2 pi p) about p = k/8, k = 0..8.
// The quotient is entire (the cosine zeros at 1/4 and 3/4 cancel), so
// the nearest center is never more than 1/16 away and the tail beyond
// degree 28 is far below f64 resolution even for sixth derivatives.
// Generated by series division at 60-digit precision.

pub(crate) const PSI_DEGREE: usize = 28;

pub(crate) const PSI_COEFFS: [[f64; PSI_DEGREE + 1]; 9] = [
    // center p = 0/8
    [
        0.9238795325112867,
        -2.4044709195373852,
        2.4044709195373852,
        4.831732974255696,
        -18.23665100029955,
        27.768139197712806,
        -15.820784513171702,
        -20.336734812545103,
        59.99617699122903,
        -68.95517415636012,
        31.228976891977158,
        32.592241425142255,
        -78.95180433082268,
        76.12414335928776,
        -29.354061692816728,
        -26.42797981725707,
        55.658791106959534,
        -47.15341933264926,
        16.09516535962625,
        12.91988971723833,
        -24.41467776304716,
        18.663106737041602,
        -5.776469631622845,
        -4.223687996035914,
        7.301915487919659,
        -5.125471098485583,
        1.4618325666416374,
        0.9880929370586097,
        -1.5838904887022949,
    ],
    // center p = 1/8
    [
        0.6666556584777465,
        -1.688688368963032,
        2.9833780963788428,
        -0.6571621054072253,
        -5.191397493998308,
        13.94360198199289,
        -16.841328023968106,
        9.353120639531006,
        7.948933850458886,
        -24.602492533444437,
        28.861440443966007,
        -17.264534189065685,
        -3.3431862379736876,
        19.719654793325,
        -23.262972385945332,
        14.341625557056894,
        -0.7898212709457005,
        -8.865111597295911,
        10.855112058624842,
        -6.850210769857014,
        1.2266132249272164,
        2.504225862244558,
        -3.301247932597384,
        2.1298274822067578,
        -0.5353482455300218,
        -0.47470670214302446,
        0.7052888809958034,
        -0.4659551488740854,
        0.1390646801977891,
    ],
    // center p = 2/8
    [
        0.5,
        -1.0,
        2.4674011002723395,
        -1.6449340668482264,
        0.27717591495256194,
        4.685670608398414,
        -7.979031066936239,
        8.852130154516512,
        -4.8532567933207345,
        -2.517892298929452,
        8.237078914021716,
        -10.392950799313194,
        6.961298814348567,
        -1.2813930271968206,
        -3.679517726060431,
        5.628065485778375,
        -4.354687407525117,
        1.7075329365169065,
        0.6914754868725503,
        -1.7396231856719035,
        1.5433614429647953,
        -0.7621343844683155,
        0.0242167168351946,
        0.3355349444517636,
        -0.35220167465513214,
        0.199463025408889,
        -0.04285528442878394,
        -0.040991230127026705,
        0.05577667266871889,
    ],
    // center p = 3/8
    [
        0.4105245275223574,
        -0.45361473433523286,
        1.94396268470582,
        -1.0189711135046458,
        1.8532966212844721,
        1.0452425758489912,
        -2.4710191249664386,
        3.8314660100657565,
        -4.480435468970717,
        1.4760134359296602,
        -0.0899565311664096,
        -2.7485688995116235,
        3.0533798359826925,
        -2.208857172022149,
        1.0630418905887848,
        0.5844273253325443,
        -0.9797390024888085,
        1.0402699154522277,
        -0.5902177012399895,
        0.07757128893953619,
        0.15351093541463018,
        -0.2540517775108224,
        0.1664831672842306,
        -0.06498827667202016,
        -0.004124816104979693,
        0.036530087125896366,
        -0.02940408009616472,
        0.015887446326133828,
        -0.003213331161813153,
    ],
    // center p = 4/8
    [
        0.3826834323650898,
        0.0,
        1.7489618723100817,
        0.0,
        2.118025207685496,
        -9.047989975945155e-61,
        -0.8707216670511481,
        -1.9795827883493597e-59,
        -3.4733112243465167,
        -3.314518039468322e-58,
        -1.6626947308999325,
        -5.331548906007423e-57,
        1.216731288919232,
        -8.535276231808334e-56,
        1.3014304161007977,
        -1.365725879699343e-54,
        0.03051102182736167,
        -2.1851757217514774e-53,
        -0.3755803051545095,
        -3.4962836941464295e-52,
        -0.1085784416564066,
        -5.594054362030811e-51,
        0.051832902999549624,
        -8.95048705949141e-50,
        0.029999480619902277,
        -1.4320779309450557e-48,
        -0.0022759396706125644,
        -2.2913246897656696e-47,
        -0.004382647416580339,
    ],
    // center p = 5/8
    [
        0.4105245275223574,
        0.45361473433523286,
        1.94396268470582,
        1.0189711135046458,
        1.8532966212844721,
        -1.0452425758489912,
        -2.4710191249664386,
        -3.8314660100657565,
        -4.480435468970717,
        -1.4760134359296602,
        -0.0899565311664096,
        2.7485688995116235,
        3.0533798359826925,
        2.208857172022149,
        1.0630418905887848,
        -0.5844273253325443,
        -0.9797390024888085,
        -1.0402699154522277,
        -0.5902177012399895,
        -0.07757128893953619,
        0.15351093541463018,
        0.2540517775108224,
        0.1664831672842306,
        0.06498827667202016,
        -0.004124816104979693,
        -0.036530087125896366,
        -0.02940408009616472,
        -0.015887446326133828,
        -0.003213331161813153,
    ],
    // center p = 6/8
    [
        0.5,
        1.0,
        2.4674011002723395,
        1.6449340668482264,
        0.27717591495256194,
        -4.685670608398414,
        -7.979031066936239,
        -8.852130154516512,
        -4.8532567933207345,
        2.517892298929452,
        8.237078914021716,
        10.392950799313194,
        6.961298814348567,
        1.2813930271968206,
        -3.679517726060431,
        -5.628065485778375,
        -4.354687407525117,
        -1.7075329365169065,
        0.6914754868725503,
        1.7396231856719035,
        1.5433614429647953,
        0.7621343844683155,
        0.0242167168351946,
        -0.3355349444517636,
        -0.35220167465513214,
        -0.199463025408889,
        -0.04285528442878394,
        0.040991230127026705,
        0.05577667266871889,
    ],
    // center p = 7/8
    [
        0.6666556584777465,
        1.688688368963032,
        2.9833780963788428,
        0.6571621054072253,
        -5.191397493998308,
        -13.94360198199289,
        -16.841328023968106,
        -9.353120639531006,
        7.948933850458886,
        24.602492533444437,
        28.861440443966007,
        17.264534189065685,
        -3.3431862379736876,
        -19.719654793325,
        -23.262972385945332,
        -14.341625557056894,
        -0.7898212709457005,
        8.865111597295911,
        10.855112058624842,
        6.850210769857014,
        1.2266132249272164,
        -2.504225862244558,
        -3.301247932597384,
        -2.1298274822067578,
        -0.5353482455300218,
        0.47470670214302446,
        0.7052888809958034,
        0.4659551488740854,
        0.1390646801977891,
    ],
    // center p = 8/8
    [
        0.9238795325112867,
        2.4044709195373852,
        2.4044709195373852,
        -4.831732974255696,
        -18.23665100029955,
        -27.768139197712806,
        -15.820784513171702,
        20.336734812545103,
        59.99617699122903,
        68.95517415636012,
        31.228976891977158,
        -32.592241425142255,
        -78.95180433082268,
        -76.12414335928776,
        -29.354061692816728,
        26.42797981725707,
        55.658791106959534,
        47.15341933264926,
        16.09516535962625,
        -12.91988971723833,
        -24.41467776304716,
        -18.663106737041602,
        -5.776469631622845,
        4.223687996035914,
        7.301915487919659,
        5.125471098485583,
        1.4618325666416374,
        -0.9880929370586097,
        -1.5838904887022949,
    ],
];
