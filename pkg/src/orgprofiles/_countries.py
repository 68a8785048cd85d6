"""Country names as they appear in the trailing segment of affiliation addresses.

Used only by the location heuristic for short (3-segment) addresses, so the
list favours the spellings bibliographic databases actually print (USA,
PEOPLES R CHINA, ENGLAND, ...) over ISO names.  All entries uppercase,
whitespace-collapsed.
"""

COUNTRY_NAMES = frozenset(
    {
        "AFGHANISTAN",
        "ALBANIA",
        "ALGERIA",
        "ANDORRA",
        "ANGOLA",
        "ARGENTINA",
        "ARMENIA",
        "AUSTRALIA",
        "AUSTRIA",
        "AZERBAIJAN",
        "BAHAMAS",
        "BAHRAIN",
        "BANGLADESH",
        "BARBADOS",
        "BELARUS",
        "BYELARUS",
        "BELGIUM",
        "BELIZE",
        "BENIN",
        "BERMUDA",
        "BHUTAN",
        "BOLIVIA",
        "BOSNIA & HERZEG",
        "BOSNIA & HERZEGOVINA",
        "BOTSWANA",
        "BRAZIL",
        "BRUNEI",
        "BULGARIA",
        "BURKINA FASO",
        "BURUNDI",
        "CAMBODIA",
        "CAMEROON",
        "CANADA",
        "CAPE VERDE",
        "CHAD",
        "CHILE",
        "CHINA",
        "PEOPLES R CHINA",
        "COLOMBIA",
        "CONGO",
        "DEM REP CONGO",
        "COSTA RICA",
        "COTE IVOIRE",
        "IVORY COAST",
        "CROATIA",
        "CUBA",
        "CYPRUS",
        "CZECH REPUBLIC",
        "CZECHOSLOVAKIA",
        "DENMARK",
        "DJIBOUTI",
        "DOMINICAN REP",
        "DOMINICAN REPUBLIC",
        "ECUADOR",
        "EGYPT",
        "EL SALVADOR",
        "ENGLAND",
        "ERITREA",
        "ESTONIA",
        "ETHIOPIA",
        "FIJI",
        "FINLAND",
        "FRANCE",
        "GABON",
        "GAMBIA",
        "GEORGIA",
        "GERMANY",
        "FED REP GER",
        "GER DEM REP",
        "GHANA",
        "GREECE",
        "GREENLAND",
        "GUADELOUPE",
        "GUAM",
        "GUATEMALA",
        "GUINEA",
        "GUYANA",
        "HAITI",
        "HONDURAS",
        "HONG KONG",
        "HUNGARY",
        "ICELAND",
        "INDIA",
        "INDONESIA",
        "IRAN",
        "IRAQ",
        "IRELAND",
        "ISRAEL",
        "ITALY",
        "JAMAICA",
        "JAPAN",
        "JORDAN",
        "KAZAKHSTAN",
        "KENYA",
        "KUWAIT",
        "KYRGYZSTAN",
        "LAOS",
        "LATVIA",
        "LEBANON",
        "LESOTHO",
        "LIBERIA",
        "LIBYA",
        "LIECHTENSTEIN",
        "LITHUANIA",
        "LUXEMBOURG",
        "MACAO",
        "MACEDONIA",
        "NORTH MACEDONIA",
        "MADAGASCAR",
        "MALAWI",
        "MALAYSIA",
        "MALI",
        "MALTA",
        "MARTINIQUE",
        "MAURITANIA",
        "MAURITIUS",
        "MEXICO",
        "MICRONESIA",
        "MOLDOVA",
        "MONACO",
        "MONGOLIA",
        "MONTENEGRO",
        "MOROCCO",
        "MOZAMBIQUE",
        "MYANMAR",
        "NAMIBIA",
        "NEPAL",
        "NETHERLANDS",
        "NEW CALEDONIA",
        "NEW ZEALAND",
        "NICARAGUA",
        "NIGER",
        "NIGERIA",
        "NORTH IRELAND",
        "NORTH KOREA",
        "NORWAY",
        "OMAN",
        "PAKISTAN",
        "PANAMA",
        "PAPUA N GUINEA",
        "PAPUA NEW GUINEA",
        "PARAGUAY",
        "PERU",
        "PHILIPPINES",
        "POLAND",
        "PORTUGAL",
        "PUERTO RICO",
        "QATAR",
        "ROMANIA",
        "RUSSIA",
        "RWANDA",
        "SAUDI ARABIA",
        "SCOTLAND",
        "SENEGAL",
        "SERBIA",
        "SIERRA LEONE",
        "SINGAPORE",
        "SLOVAKIA",
        "SLOVENIA",
        "SOMALIA",
        "SOUTH AFRICA",
        "SOUTH KOREA",
        "SOUTH SUDAN",
        "SPAIN",
        "SRI LANKA",
        "SUDAN",
        "SURINAME",
        "SWAZILAND",
        "SWEDEN",
        "SWITZERLAND",
        "SYRIA",
        "TAIWAN",
        "TAJIKISTAN",
        "TANZANIA",
        "THAILAND",
        "TOGO",
        "TRINID & TOBAGO",
        "TRINIDAD & TOBAGO",
        "TUNISIA",
        "TURKEY",
        "TURKMENISTAN",
        "UGANDA",
        "UKRAINE",
        "U ARAB EMIRATES",
        "UNITED ARAB EMIRATES",
        "UNITED KINGDOM",
        "UK",
        "GREAT BRITAIN",
        "USA",
        "UNITED STATES",
        "URUGUAY",
        "USSR",
        "UZBEKISTAN",
        "VENEZUELA",
        "VIETNAM",
        "WALES",
        "YEMEN",
        "YUGOSLAVIA",
        "ZAIRE",
        "ZAMBIA",
        "ZIMBABWE",
    }
)
