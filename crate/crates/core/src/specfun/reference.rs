pub(super) const REFERENCE: &[(usize, f64, f64, [f64; 4])] = &[
    (0, 1.0, 0.0, [7.6519768655796655145e-1, 0.0, 7.6519768655796655145e-1, 8.8256964215676957983e-2]),
    (1, 1.0, 0.0, [4.4005058574493351596e-1, 0.0, 4.4005058574493351596e-1, -7.8121282130028871655e-1]),
    (0, 2.7, 0.0, [-1.4244937004601190026e-1, 0.0, -1.4244937004601190026e-1, 4.6050354907539484781e-1]),
    (5, 2.7, 0.0, [2.7387566753102938296e-2, 0.0, 2.7387566753102938296e-2, -2.8211500631481994808]),
    (10, 2.7, 0.0, [4.6893708937365218514e-6, 0.0, 4.6893708937365218514e-6, -7.0530829617727109681e+3]),
    (0, 3.0, 0.2, [-2.6753501643762081713e-1, -6.8048144699011318457e-2, -2.0209526977514574246e-1, 3.1418151520651445047e-1]),
    (2, 3.0, 0.2, [4.9160864095727107501e-1, 3.0784613475594833763e-3, 4.0511722147048600044e-1, -1.5624502305295884375e-1]),
    (3, 3.0, 0.2, [3.10242867071806474e-1, 3.5628426226196898029e-2, 2.351999516727284623e-1, -5.0046291280383811647e-1]),
    (0, 0.1, 0.05, [9.9812431719956742529e-1, -2.4976565484830864669e-3, 6.9825323530849836857e-1, -1.4664580953404731075]),
    (7, 0.5, 0.3, [-2.8521267831083146321e-8, -2.0881178099831081237e-8, 7.5793046020526053498e+5, 1.0420866749695057542e+6]),
    (20, 5.0, 1.0, [-3.2135453434480490771e-11, -2.6290399867952809984e-11, 2.4622398787229827601e+8, 3.0929512115987668944e+8]),
    (64, 10.0, 0.0, [2.9049360287291092641e-45, 0.0, 2.9049360287291092641e-45, -1.7334136710387011132e+42]),
    (0, 1.5, 2.5, [1.0945710525489468075, -2.7506148996297099507, 3.6480523208751080778e-2, 6.7149997665893631691e-3]),
    (1, 0.2, 1.6, [2.1325589361654433139e-1, 1.0680862527896518498, -1.4634644378460644972e-1, -4.2192054458711235314e-2]),
    (2, -5.0, 2.0, [-3.2676482412915881225e-2, 1.1195570285558148761, -2.0476436294100308982e-2, 5.0063353169436898195e-2]),
    (0, 11.9, 1.4, [7.9246431425874694645e-2, 4.3287536234200570217e-1, 2.8502038695943881432e-3, -5.6677078450641552655e-2]),
    (1, 11.9, 1.6, [-5.7855392305693844884e-1, 1.2052318390549603668e-1, -4.6579524991284123523e-2, -3.8623304981940890397e-3]),
    (0, 12.5, 0.0, [1.4688405470042110231e-1, 0.0, 1.4688405470042110231e-1, -1.7121430684466928735e-1]),
    (1, 12.5, 0.3, [-1.7235237190445446205e-1, 4.8805542922129608745e-2, -1.2403057892313913554e-1, -1.1254191136309441176e-1]),
    (4, 20.0, 3.0, [1.1512459235095522694, -1.2472437032586314835, 7.3862749444286237492e-3, 5.8936222541054775006e-3]),
    (15, 15.7, 0.0, [2.2438689680934101755e-1, 0.0, 2.2438689680934101755e-1, -2.293584741498049745e-1]),
    (30, 25.0, 5.0, [-2.9503714858674053112e-2, -1.036095272210068417e-2, -6.3599185265929219626e-3, 5.1278047228394720116e-1]),
    (0, 30.0, 52.0, [-2.1266321932871092885e+20, 1.9646466382132570765e+21, -2.454907272498397337e-24, -1.083021119779851814e-24]),
    (1, 30.0, 52.0, [-1.9513308023300045308e+21, -2.0288823898810379381e+20, -1.1009605674671844237e-24, 2.4680992063658879366e-24]),
    (20, 30.0, 52.0, [1.0877305209323618028e+20, 2.2753661608433302109e+18, 2.088781144764891787e-23, -4.2481085086062396922e-23]),
    (0, 39.0, 0.5, [1.2535529285438820569e-1, -3.3438482998799479196e-2, 6.7778312090231190321e-2, 3.7546402788434984299e-2]),
    (1, 41.0, 0.5, [8.0971674078254295247e-2, -5.3448072691608139764e-2, 4.4110243515417601043e-2, 6.1388816004819242833e-2]),
    (0, 50.0, 0.0, [5.5812327669251815005e-2, 0.0, 5.5812327669251815005e-2, -9.8064995470077079029e-2]),
    (1, 100.0, 2.0, [-2.8943284049670777085e-1, 7.6771928723614928345e-2, -1.0467276811546301473e-2, -2.6524756159432784125e-3]),
    (6, 300.0, 1.0, [4.8275620322278776051e-2, -3.9762191208352686543e-2, 1.1549717181451086845e-2, 1.2408223584546127731e-2]),
    (64, 999.0, 0.0, [8.2371134562643153549e-3, 0.0, 8.2371134562643153549e-3, 2.3889718807321816292e-2]),
    (0, 2.4, -1.1, [-1.4017835829200352889e-1, 6.5139538718400913625e-1, -3.1326987354008774683e-1, 1.4591114278344095253]),
    (1, 7.0, -2.8, [3.9575747055486556793e-1, -2.3092775310354656839, 7.9536362834776174981e-1, -4.6361766706351745688]),
    (3, 20.0, -4.0, [-2.9088730258466313487, 3.6225785226541005422, -5.8161957477074537583, 7.2481735871938507984]),
    (2, 0.8, -0.3, [6.7930840613912337429e-2, -5.4605378803037692468e-2, 1.1969857624162823371, -1.7433726530413661577]),
    (0, -3.0, 0.5, [-3.0753601797880277891e-1, 1.7324844577780656621e-1, 1.3725451247049944298e-1, 2.3746229686471723283e-1]),
    (1, -30.0, 10.0, [1.3963460142563002397e+3, -6.8885306483577359548e+2, -4.5960880788623418226e-6, -4.5491791965773410183e-6]),
];
