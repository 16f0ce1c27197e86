use genusgf::format::latex;
use genusgf_core::engine::{GenusTable, ModelSpec};

/// Rows of the two polynomial displays, trailing punctuation removed.
const P2: &str = r"P_2(t)&=8t^5-92t^6+464t^7-1316t^8+2204t^9-2048t^{10}+816t^{11}";
const P3: &str = r"P_3(t)&=180t^7-3648t^8+35424t^9-218944t^{10}+958160t^{11}-3102528t^{12}\\
      &+7503664t^{13}-13310768t^{14}+16365216t^{15}-11823680t^{16}+117916t^{17}\\
			&+6614784t^{18}-6008320t^{19}+1823744t^{20}";
const PT2: &str = r"\Pt_2(t)&=21t^4-336t^5+2334t^6-9108t^7+21177t^8-27756t^9+15876t^{10}";
const PT3: &str = r"\Pt_3(t)&=1485t^6-41184t^7+539073t^8-4483458t^9+26893989t^{10}-124232004t^{11}\\
        &+453861279t^{12}-1307353122t^{13}+2897271774t^{14}-4737605112t^{15}\\
				&+5355443952t^{16}-3723895296t^{17}+1197496224t^{18}";

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

#[test]
fn displays_match_up_to_whitespace() {
    let hyp = GenusTable::computed(ModelSpec::hypermap(), 3).unwrap();
    let map = GenusTable::computed(ModelSpec::map(), 3).unwrap();
    assert_eq!(squash(&latex(hyp.get(2).unwrap())), squash(P2));
    assert_eq!(squash(&latex(map.get(2).unwrap())), squash(PT2));
    assert_eq!(squash(&latex(map.get(3).unwrap())), squash(PT3));
    // The printed p_{3,17} drops a digit; everything else, row breaks
    // included, is reproduced.
    assert_eq!(
        squash(&latex(hyp.get(3).unwrap())),
        squash(&P3.replace("+117916t^{17}", "+1179136t^{17}"))
    );
}
