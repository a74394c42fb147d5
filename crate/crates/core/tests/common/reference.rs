// Reference values computed with mpmath by oracles/reference_values.py.
#![allow(dead_code, clippy::excessive_precision)]

pub const GAMMA: &[(f64, f64)] = &[
    (0.5, 1.7724538509055160273),
    (1.0, 1.0),
    (1.5, 0.88622692545275801365),
    (0.1, 9.5135076986687312858),
    (2.5, 1.3293403881791370205),
    (7.3, 1271.4236336639088399),
    (30.0, 8.8417619937397019545e+30),
];

// (alpha, beta, z, E_{alpha,beta}(z))
pub const MITTAG_LEFFLER: &[(f64, f64, f64, f64)] = &[
    (0.25, 0.25, -0.3, 0.15981821440356806815),
    (0.25, 0.25, -1.0, 0.063822257579002721552),
    (0.25, 0.25, -2.5, 0.019325153185209227722),
    (0.25, 0.25, -5.0, 0.0062229193137905033015),
    (0.25, 0.25, -8.0, 0.0026864359461971193953),
    (0.25, 0.25, -12.0, 0.0012634038722397113808),
    (0.25, 0.25, -20.0, 0.00047605795576024046641),
    (0.25, 0.25, -35.0, 0.00016009884753778837297),
    (0.25, 0.25, -50.0, 0.000079381217666556373025),
    (0.25, 0.25, 0.5, 1.0218744670047845623),
    (0.25, 0.25, 2.0, 284355536.74783683914),
    (0.25, 1.0, -0.3, 0.7475917733762233886),
    (0.25, 1.0, -1.0, 0.46385276080171328694),
    (0.25, 1.0, -2.5, 0.25256463488894419206),
    (0.25, 1.0, -5.0, 0.14279894642587369523),
    (0.25, 1.0, -8.0, 0.093724110665607016969),
    (0.25, 1.0, -12.0, 0.064244979448226136247),
    (0.25, 1.0, -20.0, 0.039426390446653064471),
    (0.25, 1.0, -35.0, 0.022861550333182119027),
    (0.25, 1.0, -50.0, 0.016097508838799057449),
    (0.25, 1.0, 0.5, 2.0796142210090508739),
    (0.25, 1.0, 2.0, 35544441.509930781603),
    (0.25, 1.25, -0.3, 0.84136075541258873581),
    (0.25, 1.25, -1.0, 0.53614723919828671306),
    (0.25, 1.25, -2.5, 0.29897414604442232317),
    (0.25, 1.25, -5.0, 0.17144021071482526095),
    (0.25, 1.25, -8.0, 0.11328448616679912288),
    (0.25, 1.25, -12.0, 0.077979585045981155313),
    (0.25, 1.25, -20.0, 0.048028680477667346776),
    (0.25, 1.25, -35.0, 0.027918241419051939456),
    (0.25, 1.25, -50.0, 0.019678049823224018851),
    (0.25, 1.25, 0.5, 2.1592284420181017477),
    (0.25, 1.25, 2.0, 17772220.254965390802),
    (0.25, 1.7, -0.3, 0.8592635347000135281),
    (0.25, 1.7, -1.0, 0.56501752892866691602),
    (0.25, 1.7, -2.5, 0.32403348446368878298),
    (0.25, 1.7, -5.0, 0.18892689256341836385),
    (0.25, 1.7, -8.0, 0.12584004146114937554),
    (0.25, 1.7, -12.0, 0.087054150496553684603),
    (0.25, 1.7, -20.0, 0.053848702697125027475),
    (0.25, 1.7, -35.0, 0.031393018869055068776),
    (0.25, 1.7, -50.0, 0.022153978656654179337),
    (0.25, 1.7, 0.5, 2.0022739407925894264),
    (0.25, 1.7, 2.0, 5103729.2450134682047),
    (0.5, 0.5, -0.3, 0.34380978317745975013),
    (0.5, 0.5, -1.0, 0.13660600739194928254),
    (0.5, 0.5, -2.5, 0.03717367339489733533),
    (0.5, 0.5, -5.0, 0.010666394882413155097),
    (0.5, 0.5, -8.0, 0.0043082539407088651661),
    (0.5, 0.5, -12.0, 0.001938931369031135513),
    (0.5, 0.5, -20.0, 0.0007026087267299005751),
    (0.5, 0.5, -35.0, 0.0002300000591970323179),
    (0.5, 0.5, -50.0, 0.00011277028156766193889),
    (0.5, 0.5, 0.5, 1.5403698281390348336),
    (0.5, 0.5, 2.0, 218.44599836350370111),
    (0.5, 1.0, -0.3, 0.73459933456765514992),
    (0.5, 1.0, -1.0, 0.42758357615580700441),
    (0.5, 1.0, -2.5, 0.21080636406114358065),
    (0.5, 1.0, -5.0, 0.11070463773306862637),
    (0.5, 1.0, -8.0, 0.069985166200880927723),
    (0.5, 1.0, -12.0, 0.04685422101489376262),
    (0.5, 1.0, -20.0, 0.028174348741051319319),
    (0.5, 1.0, -35.0, 0.016113130956815978704),
    (0.5, 1.0, -50.0, 0.0112815362653237725),
    (0.5, 1.0, 0.5, 1.9523604891825570933),
    (0.5, 1.0, 2.0, 108.94090438997797241),
    (0.5, 1.5, -0.3, 0.88466888477448286634),
    (0.5, 1.5, -1.0, 0.57241642384419299559),
    (0.5, 1.5, -2.5, 0.31567745437554256774),
    (0.5, 1.5, -5.0, 0.17785907245338627473),
    (0.5, 1.5, -8.0, 0.11625185422488988403),
    (0.5, 1.5, -12.0, 0.079428814915425519782),
    (0.5, 1.5, -20.0, 0.048591282562947434034),
    (0.5, 1.5, -35.0, 0.02811105340123382918),
    (0.5, 1.5, -50.0, 0.01977436927469352455),
    (0.5, 1.5, 0.5, 1.9047209783651141866),
    (0.5, 1.5, 2.0, 53.970452194988986206),
    (0.5, 1.7, -0.3, 0.87706199609139968025),
    (0.5, 1.7, -1.0, 0.58234985229015789801),
    (0.5, 1.7, -2.5, 0.329902637864396421),
    (0.5, 1.7, -5.0, 0.18905213968830384549),
    (0.5, 1.7, -8.0, 0.12457889763052928966),
    (0.5, 1.7, -12.0, 0.085546896085515469257),
    (0.5, 1.7, -20.0, 0.052558876791629926317),
    (0.5, 1.7, -35.0, 0.030494187370050016215),
    (0.5, 1.7, -50.0, 0.021476114148644863562),
    (0.5, 1.7, 0.5, 1.7880979696558117329),
    (0.5, 1.7, 2.0, 40.628513092227333081),
    (0.75, 0.75, -0.3, 0.54511154539096949372),
    (0.75, 0.75, -1.0, 0.23223772010096143194),
    (0.75, 0.75, -2.5, 0.055222034307775473183),
    (0.75, 0.75, -5.0, 0.012140520971468211535),
    (0.75, 0.75, -8.0, 0.0041752734124672942406),
    (0.75, 0.75, -12.0, 0.0017072910312744580989),
    (0.75, 0.75, -20.0, 0.00057356041295395037991),
    (0.75, 0.75, -35.0, 0.00017911599354276111735),
    (0.75, 0.75, -50.0, 0.000086221380547165753602),
    (0.75, 0.75, 0.5, 1.6807270339672676018),
    (0.75, 0.75, 2.0, 20.898484277658940826),
    (0.75, 1.0, -0.3, 0.73190817511022038569),
    (0.75, 1.0, -1.0, 0.39310830281575406177),
    (0.75, 1.0, -2.5, 0.15642695861194744289),
    (0.75, 1.0, -5.0, 0.067923974332643942122),
    (0.75, 1.0, -8.0, 0.039335854041138190969),
    (0.75, 1.0, -12.0, 0.025085777706384877714),
    (0.75, 1.0, -20.0, 0.014527522154459504195),
    (0.75, 1.0, -35.0, 0.0081166557604666110874),
    (0.75, 1.0, -50.0, 0.0056311878629451302351),
    (0.75, 1.0, 0.5, 1.7937773945015026827),
    (0.75, 1.0, 2.0, 16.477360564726636035),
    (0.75, 1.75, -0.3, 0.8936394162992654141),
    (0.75, 1.75, -1.0, 0.60689169718424593823),
    (0.75, 1.75, -2.5, 0.33742921655522102284),
    (0.75, 1.75, -5.0, 0.18641520513347121158),
    (0.75, 1.75, -8.0, 0.12008301824485772613),
    (0.75, 1.75, -12.0, 0.081242851857801260191),
    (0.75, 1.75, -20.0, 0.04927362389227702479),
    (0.75, 1.75, -35.0, 0.028339524121129525398),
    (0.75, 1.75, -50.0, 0.019887376242741097395),
    (0.75, 1.75, 0.5, 1.5875547890030053654),
    (0.75, 1.75, 2.0, 7.7386802823633180177),
    (0.75, 1.7, -0.3, 0.89975841828504117766),
    (0.75, 1.7, -1.0, 0.60577241676684217118),
    (0.75, 1.7, -2.5, 0.33304158956042529449),
    (0.75, 1.7, -5.0, 0.18255252841413470968),
    (0.75, 1.7, -8.0, 0.11716804750917991588),
    (0.75, 1.7, -12.0, 0.079103275767653582665),
    (0.75, 1.7, -20.0, 0.04789390431063643951),
    (0.75, 1.7, -35.0, 0.02751563072472943153),
    (0.75, 1.7, -50.0, 0.019300702600631380672),
    (0.75, 1.7, 0.5, 1.6200076163566341547),
    (0.75, 1.7, 2.0, 8.1588111969786239315),
    (0.9, 0.9, -0.3, 0.66532303683405561028),
    (0.9, 0.9, -1.0, 0.30814879777662195447),
    (0.9, 0.9, -2.5, 0.068873030246501650372),
    (0.9, 0.9, -5.0, 0.010212790452992133215),
    (0.9, 0.9, -8.0, 0.0025808143045736155553),
    (0.9, 0.9, -12.0, 0.00091508415994729314342),
    (0.9, 0.9, -20.0, 0.00028402595741192638794),
    (0.9, 0.9, -35.0, 0.000085345464215583253658),
    (0.9, 0.9, -50.0, 0.000040536249580922190687),
    (0.9, 0.9, 0.5, 1.674248091065913674),
    (0.9, 0.9, 2.0, 10.415849710921111519),
    (0.9, 1.0, -0.3, 0.73584527664843058747),
    (0.9, 1.0, -1.0, 0.37606602142464187902),
    (0.9, 1.0, -2.5, 0.11469986754557784504),
    (0.9, 1.0, -5.0, 0.034431324804098418323),
    (0.9, 1.0, -8.0, 0.017095144580796805831),
    (0.9, 1.0, -12.0, 0.010275288049933644937),
    (0.9, 1.0, -20.0, 0.0057495078161091125836),
    (0.9, 1.0, -35.0, 0.0031556079491116557374),
    (0.9, 1.0, -50.0, 0.0021753530768569760498),
    (0.9, 1.0, 0.5, 1.7043087220993991136),
    (0.9, 1.0, 2.0, 9.6049277845715006791),
    (0.9, 1.9, -0.3, 0.88051574450523143461),
    (0.9, 1.9, -1.0, 0.62393397857535812851),
    (0.9, 1.9, -2.5, 0.35412005298176885633),
    (0.9, 1.9, -5.0, 0.19311373503918030895),
    (0.9, 1.9, -8.0, 0.12286310692740039332),
    (0.9, 1.9, -12.0, 0.082477059329172191808),
    (0.9, 1.9, -20.0, 0.049712524609194541481),
    (0.9, 1.9, -35.0, 0.028481268344311093821),
    (0.9, 1.9, -50.0, 0.019956492938462859247),
    (0.9, 1.9, 0.5, 1.4086174441987983055),
    (0.9, 1.9, 2.0, 4.3024638922857508072),
    (0.9, 1.7, -0.3, 0.91531863035598898529),
    (0.9, 1.7, -1.0, 0.62464511654730404296),
    (0.9, 1.7, -2.5, 0.3346595099382402624),
    (0.9, 1.7, -5.0, 0.17437453287135839602),
    (0.9, 1.7, -8.0, 0.10872594066907893493),
    (0.9, 1.7, -12.0, 0.072213536550839125137),
    (0.9, 1.7, -20.0, 0.04317931634394348976),
    (0.9, 1.7, -35.0, 0.024617308791119991999),
    (0.9, 1.7, -50.0, 0.017216139682966360486),
    (0.9, 1.7, 0.5, 1.5396925106130902585),
    (0.9, 1.7, 2.0, 5.2113234371282820101),
    (0.3, 1.7, -1.0, 0.56818313789775871349),
    (0.4, 0.8, -2.5, 0.16827301836326767616),
];

pub const E1: &[(f64, f64)] = &[
    (1e-08, 17.843465089050832566),
    (0.001, 6.3315393641361493112),
    (0.1, 1.8229239584193906159),
    (0.5, 0.55977359477616081175),
    (1.0, 0.21938393439552027368),
    (2.0, 0.048900510708061119567),
    (5.0, 0.0011482955912753257973),
    (10.0, 4.1569689296853242774e-6),
    (50.0, 3.7832640295504590187e-24),
    (300.0, 1.7103842768045101157e-133),
];

// int_0^t e^h E1(h) dh
pub const DISTRIBUTED_L: &[(f64, f64)] = &[
    (0.1, 0.28927311661593886687),
    (1.0, 1.1735630272247269349),
    (5.0, 2.357075753620365437),
    (20.0, 3.6206664839514846957),
];
